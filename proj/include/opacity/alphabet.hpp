#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace opacity {

using StateId = std::size_t;
using Letter = std::size_t;

/// Ordered finite alphabet. Letters are referred to by index everywhere
/// outside of file I/O.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> letters);

  std::size_t size() const { return letters_.size(); }
  const std::string& name(Letter letter) const { return letters_.at(letter); }
  const std::vector<std::string>& letters() const { return letters_; }
  std::optional<Letter> find(std::string_view name) const;
  /// Like find() but throws AlphabetMismatch for unknown letters.
  Letter at(std::string_view name) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> letters_;
};

/// Throws AlphabetMismatch unless both alphabets are identical.
void require_same_alphabet(const Alphabet& a, const Alphabet& b, std::string_view context);

}  // namespace opacity
