#include "wordwait/dna_word.hpp"

#include <algorithm>
#include <stdexcept>

namespace wordwait {

char letter_char(Letter code) { return "ACGT"[code & 3u]; }

DnaWord DnaWord::parse(std::string_view text) {
  if (text.empty() || text.size() > static_cast<std::size_t>(kMaxWordLength)) {
    throw std::invalid_argument("word length must be 1.." +
                                std::to_string(kMaxWordLength));
  }
  DnaWord word;
  word.letters_.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case 'A': case 'a': word.letters_.push_back(0); break;
      case 'C': case 'c': word.letters_.push_back(1); break;
      case 'G': case 'g': word.letters_.push_back(2); break;
      case 'T': case 't': word.letters_.push_back(3); break;
      default:
        throw std::invalid_argument("invalid DNA letter '" + std::string(1, c) + "'");
    }
  }
  return word;
}

DnaWord DnaWord::from_packed(std::uint32_t code, int length) {
  if (length < 1 || length > kMaxWordLength) {
    throw std::invalid_argument("word length must be 1.." +
                                std::to_string(kMaxWordLength));
  }
  DnaWord word;
  word.letters_.resize(static_cast<std::size_t>(length));
  for (int i = length - 1; i >= 0; --i) {
    word.letters_[static_cast<std::size_t>(i)] = static_cast<Letter>(code & 3u);
    code >>= 2;
  }
  return word;
}

std::uint32_t DnaWord::packed() const {
  std::uint32_t code = 0;
  for (Letter l : letters_) code = (code << 2) | l;
  return code;
}

bool DnaWord::is_constant() const {
  return std::all_of(letters_.begin(), letters_.end(),
                     [&](Letter l) { return l == letters_.front(); });
}

std::string DnaWord::str() const {
  std::string out;
  out.reserve(letters_.size());
  for (Letter l : letters_) out.push_back(letter_char(l));
  return out;
}

}  // namespace wordwait
