#include <cstdio>
#include <limits>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sumrank/oracle.hpp"

namespace sumrank {

namespace {

int hex_width(std::uint64_t q) {
  int width = 1;
  for (std::uint64_t v = q - 1; v >= 16; v /= 16) ++width;
  return width;
}

// Position of entry (r, c) of block i among the base-q digits of an index.
std::uint64_t digit_position(const CodeParams& p, unsigned i, unsigned r, unsigned c) {
  return static_cast<std::uint64_t>(i) * p.m() * p.eta() + static_cast<std::uint64_t>(c) * p.m() + r;
}

}  // namespace

void write_code(std::ostream& out, const ExplicitCode& code) {
  const CodeParams& p = code.params;
  const int width = hex_width(p.q());
  out << p.q() << ' ' << p.m() << ' ' << p.eta() << ' ' << p.ell() << '\n';
  const std::uint64_t digits = static_cast<std::uint64_t>(p.m()) * p.n();
  std::vector<std::uint64_t> digit(digits);
  char buf[8];
  for (auto word : code.codewords) {
    for (auto& d : digit) {
      d = word % p.q();
      word /= p.q();
    }
    std::string line;
    for (unsigned i = 0; i < p.ell(); ++i) {
      if (i > 0) line += '|';
      for (unsigned r = 0; r < p.m(); ++r) {
        for (unsigned c = 0; c < p.eta(); ++c) {
          std::snprintf(buf, sizeof buf, "%0*llx", width,
                        static_cast<unsigned long long>(digit[digit_position(p, i, r, c)]));
          line += buf;
        }
      }
    }
    out << line << '\n';
  }
}

ExplicitCode read_code(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_code: missing header");
  std::istringstream header(line);
  std::uint64_t q = 0;
  unsigned m = 0, eta = 0, ell = 0;
  if (!(header >> q >> m >> eta >> ell)) throw std::runtime_error("read_code: malformed header");
  const CodeParams p = [&] {
    try {
      return CodeParams(q, m, eta, ell);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(std::string("read_code: ") + e.what());
    }
  }();
  if (p.space_size() > ExactInt(std::numeric_limits<std::uint64_t>::max())) {
    throw std::runtime_error("read_code: space too large for indexed codewords");
  }
  const int width = hex_width(q);
  const std::size_t block_chars = static_cast<std::size_t>(width) * m * eta;
  std::vector<std::uint64_t> words;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.size() != ell * block_chars + (ell - 1)) {
      throw std::runtime_error("read_code: line " + std::to_string(line_no) + " has wrong length");
    }
    std::uint64_t index = 0;
    std::uint64_t scale = 1;
    std::vector<std::uint64_t> digit(static_cast<std::size_t>(m) * p.n());
    for (unsigned i = 0; i < ell; ++i) {
      const std::size_t start = i * (block_chars + 1);
      if (i > 0 && line[start - 1] != '|') {
        throw std::runtime_error("read_code: line " + std::to_string(line_no) + " lacks block separator");
      }
      for (unsigned r = 0; r < m; ++r) {
        for (unsigned c = 0; c < eta; ++c) {
          const std::string text = line.substr(start + (static_cast<std::size_t>(r) * eta + c) * width, width);
          std::size_t used = 0;
          unsigned long value = 0;
          try {
            value = std::stoul(text, &used, 16);
          } catch (const std::exception&) {
            used = 0;
          }
          if (used != text.size() || value >= q) {
            throw std::runtime_error("read_code: line " + std::to_string(line_no) + " has bad digit '" +
                                     text + "'");
          }
          digit[digit_position(p, i, r, c)] = value;
        }
      }
    }
    for (const auto d : digit) {
      index += d * scale;
      scale *= q;
    }
    words.push_back(index);
  }
  if (words.empty()) throw std::runtime_error("read_code: no codewords");
  return make_code(p, std::move(words));
}

}  // namespace sumrank
