#include <cctype>
#include <charconv>
#include <cstdio>
#include <ostream>
#include <string>

#include "relphase/errors.hpp"
#include "relphase/states.hpp"

namespace relphase {

namespace {

// Parses a signed decimal starting at first. from_chars rejects a leading '+'.
const char* parse_real(const char* first, const char* last, double& value) {
  bool negate = false;
  if (first != last && (*first == '+' || *first == '-')) {
    negate = *first == '-';
    ++first;
  }
  if (first == last || *first == '+' || *first == '-') return nullptr;
  const auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
  if (ec != std::errc() || ptr == first) return nullptr;
  if (negate) value = -value;
  return ptr;
}

bool parse_complex(std::string_view token, Complex& out) {
  const char* first = token.data();
  const char* last = first + token.size();
  double a = 0.0;
  const char* p = parse_real(first, last, a);
  if (p == nullptr) return false;
  if (p == last) {
    out = {a, 0.0};
    return true;
  }
  if (*p == 'i' && p + 1 == last) {
    out = {0.0, a};
    return true;
  }
  if (*p != '+' && *p != '-') return false;
  double b = 0.0;
  const char* q = parse_real(p, last, b);
  if (q == nullptr || q + 1 != last || *q != 'i') return false;
  out = {a, b};
  return true;
}

}  // namespace

DensityMatrix4 parse_density_matrix(std::string_view text, double tol) {
  Matrix4c m = Matrix4c::Zero();
  std::size_t row = 0;
  std::size_t line_no = 0;
  std::size_t last_line = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    pos = eol + 1;

    std::size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i == line.size() || line[i] == '#') {
      if (eol == text.size()) break;
      continue;
    }
    if (row == 4) {
      throw ParseError("unexpected content after four matrix rows", line_no, i + 1);
    }
    last_line = line_no;

    std::size_t col = 0;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      const std::string_view token = line.substr(i, j - i);
      if (col == 4) {
        throw ParseError("more than four entries in row", line_no, i + 1);
      }
      Complex value;
      if (!parse_complex(token, value)) {
        throw ParseError("malformed complex entry '" + std::string(token) + "' (expected a+bi or a-bi)",
                         line_no, i + 1);
      }
      m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = value;
      ++col;
      i = j;
    }
    if (col != 4) {
      throw ParseError("expected 4 entries in row, found " + std::to_string(col), line_no, line.size() + 1);
    }
    ++row;
    if (eol == text.size()) break;
  }
  if (row != 4) {
    throw ParseError("expected 4 matrix rows, found " + std::to_string(row), line_no, 1);
  }
  try {
    return DensityMatrix4::from_matrix(m, tol);
  } catch (const ContractViolation& e) {
    throw ParseError(std::string("invalid density matrix: ") + e.what(), last_line, 1);
  }
}

void write_density_matrix(std::ostream& os, const Matrix4c& m) {
  char buf[64];
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const Complex z = m(r, c);
      std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
      os << buf << (c == 3 ? '\n' : ' ');
    }
  }
}

}  // namespace relphase
