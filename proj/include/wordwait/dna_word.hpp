#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace wordwait {

/// Letters are coded A=0, C=1, G=2, T=3.
using Letter = std::uint8_t;

inline constexpr int kAlphabetSize = 4;
inline constexpr int kMaxWordLength = 16;

char letter_char(Letter code);

/// A target word of 1..16 letters over {A,C,G,T}.
class DnaWord {
 public:
  DnaWord() = default;

  /// Throws std::invalid_argument on an empty/too long word or a letter
  /// outside ACGT. Lower case is accepted.
  static DnaWord parse(std::string_view text);

  /// Word whose i-th letter is bits [2(W-1-i), 2(W-1-i)+1] of `code`, so
  /// that numeric order of codes is lexicographic order of words.
  static DnaWord from_packed(std::uint32_t code, int length);

  std::uint32_t packed() const;
  int size() const { return static_cast<int>(letters_.size()); }
  Letter operator[](int i) const { return letters_[static_cast<std::size_t>(i)]; }
  const std::vector<Letter>& letters() const { return letters_; }
  bool is_constant() const;
  std::string str() const;

  friend bool operator==(const DnaWord&, const DnaWord&) = default;

 private:
  std::vector<Letter> letters_;
};

}  // namespace wordwait
