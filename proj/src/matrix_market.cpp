#include "shpart/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

namespace shpart {

namespace {

[[noreturn]] void fail(const std::string& name, std::size_t line, const std::string& what) {
  throw input_error(name + ":" + std::to_string(line) + ": " + what);
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

enum class field_kind { real, integer, complex_field, pattern };
enum class symmetry_kind { general, symmetric, skew, hermitian };

// Number of value tokens that follow the two indices on an entry line.
int value_tokens(field_kind f) {
  switch (f) {
    case field_kind::pattern: return 0;
    case field_kind::complex_field: return 2;
    default: return 1;
  }
}

bool parse_u64(const std::string& tok, std::uint64_t& out) {
  if (tok.empty()) return false;
  char* end = nullptr;
  errno = 0;
  unsigned long long v = std::strtoull(tok.c_str(), &end, 10);
  if (errno != 0 || end != tok.c_str() + tok.size()) return false;
  out = v;
  return true;
}

bool parse_value(const std::string& tok, double& out) {
  if (tok.empty()) return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtod(tok.c_str(), &end);
  return errno == 0 && end == tok.c_str() + tok.size();
}

}  // namespace

sparse_matrix_pattern parse_matrix(std::istream& in, const std::string& name) {
  std::string line;
  std::size_t lineno = 0;

  if (!std::getline(in, line)) fail(name, 1, "empty input");
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::istringstream banner(line);
  std::string tag, object, format, field_tok, sym_tok;
  banner >> tag >> object >> format >> field_tok >> sym_tok;
  if (tag != "%%MatrixMarket") fail(name, lineno, "expected %%MatrixMarket banner");
  if (lower(object) != "matrix") fail(name, lineno, "unsupported object '" + object + "'");
  if (lower(format) != "coordinate") fail(name, lineno, "unsupported format '" + format + "'");

  field_kind field;
  const std::string f = lower(field_tok);
  if (f == "real") field = field_kind::real;
  else if (f == "integer") field = field_kind::integer;
  else if (f == "complex") field = field_kind::complex_field;
  else if (f == "pattern") field = field_kind::pattern;
  else fail(name, lineno, "unsupported field '" + field_tok + "'");

  symmetry_kind sym;
  const std::string s = lower(sym_tok);
  if (s == "general") sym = symmetry_kind::general;
  else if (s == "symmetric") sym = symmetry_kind::symmetric;
  else if (s == "skew-symmetric") sym = symmetry_kind::skew;
  else if (s == "hermitian") sym = symmetry_kind::hermitian;
  else fail(name, lineno, "unsupported symmetry '" + sym_tok + "'");

  if (sym == symmetry_kind::skew && field == field_kind::pattern)
    fail(name, lineno, "skew-symmetric pattern matrices are not valid");

  // Size line: first non-comment, non-blank line after the banner.
  std::uint64_t rows = 0, cols = 0, declared = 0;
  for (;;) {
    if (!std::getline(in, line)) fail(name, lineno + 1, "missing size line");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '%') continue;
    std::istringstream sz(line);
    std::string a, b, c, extra;
    sz >> a >> b >> c >> extra;
    if (!parse_u64(a, rows) || !parse_u64(b, cols) || !parse_u64(c, declared) || !extra.empty())
      fail(name, lineno, "malformed size line");
    break;
  }
  if (rows == 0 || cols == 0) fail(name, lineno, "matrix dimensions must be positive");
  if (rows > 0xFFFFFFFFull || cols > 0xFFFFFFFFull)
    fail(name, lineno, "matrix dimensions exceed 32-bit index range");
  if (sym != symmetry_kind::general && rows != cols)
    fail(name, lineno, "symmetric matrix must be square");

  sparse_matrix_pattern out;
  out.rows = rows;
  out.cols = cols;
  out.nonzeros.reserve(sym == symmetry_kind::general ? declared : 2 * declared);

  const int vals = value_tokens(field);
  std::uint64_t seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '%') continue;

    std::istringstream entry(line);
    std::string itok, jtok;
    entry >> itok >> jtok;
    std::uint64_t i1 = 0, j1 = 0;
    if (!parse_u64(itok, i1) || !parse_u64(jtok, j1))
      fail(name, lineno, "malformed entry line");

    bool zero = false;
    for (int t = 0; t < vals; ++t) {
      std::string vtok;
      entry >> vtok;
      double v = 0.0;
      if (!parse_value(vtok, v)) fail(name, lineno, "malformed entry value");
      // A complex entry is zero only if both components are.
      if (t == 0) zero = (v == 0.0);
      else zero = zero && (v == 0.0);
    }
    std::string extra;
    entry >> extra;
    if (!extra.empty()) fail(name, lineno, "trailing tokens on entry line");

    if (i1 == 0 || j1 == 0 || i1 > rows || j1 > cols)
      fail(name, lineno, "entry index out of range");
    ++seen;
    if (seen > declared) fail(name, lineno, "more entries than declared");
    if (zero && field != field_kind::pattern) continue;

    const auto i = static_cast<std::uint32_t>(i1 - 1);
    const auto j = static_cast<std::uint32_t>(j1 - 1);
    if (sym == symmetry_kind::skew && i == j)
      fail(name, lineno, "skew-symmetric matrix has a diagonal entry");
    out.nonzeros.emplace_back(i, j);
    if (sym != symmetry_kind::general && i != j) out.nonzeros.emplace_back(j, i);
  }
  if (seen < declared)
    fail(name, lineno, "fewer entries than declared (" + std::to_string(seen) + " of " +
                           std::to_string(declared) + ")");

  std::sort(out.nonzeros.begin(), out.nonzeros.end());
  out.nonzeros.erase(std::unique(out.nonzeros.begin(), out.nonzeros.end()), out.nonzeros.end());
  return out;
}

sparse_matrix_pattern parse_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open " + path);
  return parse_matrix(in, path);
}

hypergraph column_net(const sparse_matrix_pattern& m) {
  std::vector<std::vector<net_id>> nets(m.rows);
  for (const auto& [i, j] : m.nonzeros) nets[i].push_back(j);
  // nonzeros are sorted row-major, so each net list is already sorted and unique.
  return hypergraph::from_net_lists(std::move(nets), m.cols);
}

}  // namespace shpart
