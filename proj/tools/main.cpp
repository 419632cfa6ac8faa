#include "cli.hpp"

int main(int argc, char** argv) { return wordwait::cli::run(argc, argv); }
