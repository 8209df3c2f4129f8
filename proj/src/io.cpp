#include "rcpkit/io.hpp"

#include "rcpkit/error.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace rcpkit {

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string(missing_value);
}

double parse_double(std::string_view token) {
  while (!token.empty() && std::isspace(static_cast<unsigned char>(token.front()))) token.remove_prefix(1);
  while (!token.empty() && std::isspace(static_cast<unsigned char>(token.back()))) token.remove_suffix(1);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double v = 0.0;
  const auto r = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || r.ec != std::errc{} || r.ptr != token.data() + token.size())
    fail(ErrorKind::invalid_argument, "not a number: '" + std::string(token) + "'");
  return v;
}

std::string matrix_to_csv(const Matrix& m) {
  std::string out;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

Matrix matrix_from_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    std::vector<double> row;
    std::size_t p = 0;
    while (true) {
      const std::size_t comma = line.find(',', p);
      row.push_back(parse_double(line.substr(p, comma == std::string_view::npos ? std::string_view::npos : comma - p)));
      if (comma == std::string_view::npos) break;
      p = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      fail(ErrorKind::invalid_argument, "csv: ragged rows (" + std::to_string(row.size()) + " vs " +
                                            std::to_string(rows.front().size()) + " values)");
    rows.push_back(std::move(row));
  }
  require(!rows.empty(), "csv: no data");
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return m;
}

namespace {

// Header tokens: whitespace separated, '#' comments to end of line.
class PgmHeader {
 public:
  explicit PgmHeader(std::string_view b) : b_(b) {}

  long next_int() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < b_.size() && std::isdigit(static_cast<unsigned char>(b_[pos_]))) ++pos_;
    require(pos_ > start, "pgm: malformed header");
    long v = 0;
    std::from_chars(b_.data() + start, b_.data() + pos_, v);
    return v;
  }
  std::size_t pos() const { return pos_; }
  void skip() {
    while (pos_ < b_.size()) {
      if (b_[pos_] == '#') {
        while (pos_ < b_.size() && b_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(b_[pos_]))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

 private:
  std::string_view b_;
  std::size_t pos_ = 2;
};

}  // namespace

Matrix parse_pgm(std::string_view bytes) {
  require(bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '2' || bytes[1] == '5'), "pgm: expected P2 or P5");
  const bool binary = bytes[1] == '5';
  PgmHeader h(bytes);
  const long width = h.next_int();
  const long height = h.next_int();
  const long maxval = h.next_int();
  require(width >= 1 && height >= 1, "pgm: empty image");
  require(maxval >= 1 && maxval <= 65535, "pgm: maxval must lie in [1, 65535]");
  Matrix m(height, width);
  if (binary) {
    std::size_t p = h.pos() + 1;  // exactly one whitespace byte after maxval
    const std::size_t bpp = maxval < 256 ? 1 : 2;
    require(bytes.size() >= p + static_cast<std::size_t>(width * height) * bpp, "pgm: truncated raster");
    for (long i = 0; i < height; ++i)
      for (long j = 0; j < width; ++j) {
        unsigned v = static_cast<unsigned char>(bytes[p]);
        if (bpp == 2) v = (v << 8) | static_cast<unsigned char>(bytes[p + 1]);
        p += bpp;
        require(static_cast<long>(v) <= maxval, "pgm: sample exceeds maxval");
        m(i, j) = v;
      }
  } else {
    for (long i = 0; i < height; ++i)
      for (long j = 0; j < width; ++j) {
        const long v = h.next_int();
        require(v <= maxval, "pgm: sample exceeds maxval");
        m(i, j) = static_cast<double>(v);
      }
  }
  return m;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::invalid_argument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Matrix load_image(const std::string& path) {
  const std::string bytes = read_file(path);
  if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '2' || bytes[1] == '5')) return parse_pgm(bytes);
  return matrix_from_csv(bytes);
}

}  // namespace rcpkit
