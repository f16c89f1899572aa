#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qdkit/abels.hpp"
#include "qdkit/free_word.hpp"
#include "qdkit/heisenberg.hpp"

namespace qdkit {

// Line-oriented element files: one element per line, '#' starts a comment,
// blank lines are ignored.
//   free words      : a string over {a, b, A, B}, or "e"
//   Abels elements  : 16 row-major entries, each "u:k" (= u·p^-k) or "u"
//   Heisenberg      : 9 row-major integers of [[1,a,c],[0,1,b],[0,0,1]]

/// Content lines with comments and surrounding whitespace removed.
std::vector<std::string> readElementLines(std::istream& in);
std::vector<std::string> readElementFile(const std::string& path);

FreeWord parseFreeWord(std::string_view line);
AbelsElement parseAbelsElement(std::string_view line, std::uint32_t prime);
HeisenbergElement parseHeisenbergElement(std::string_view line);

std::string formatElement(const FreeWord& w);
std::string formatElement(const AbelsElement& g);
std::string formatElement(const HeisenbergElement& x);

}  // namespace qdkit
