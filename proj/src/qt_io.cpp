#include "qtgi/qt_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "qtgi/errors.hpp"

namespace qtgi {

namespace {

struct Token {
  std::string_view text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (ch == '\n') {
      ++line;
      col = 1;
      ++i;
    } else if (ch == '#') {
      while (i < text.size() && text[i] != '\n') {
        ++i;
      }
    } else if (ch == ' ' || ch == '\t' || ch == '\r') {
      ++i;
      ++col;
    } else {
      const std::size_t start = i;
      const std::size_t start_col = col;
      while (i < text.size() && text[i] != '\n' && text[i] != ' ' && text[i] != '\t' && text[i] != '\r' &&
             text[i] != '#') {
        ++i;
        ++col;
      }
      out.push_back({text.substr(start, i - start), line, start_col});
    }
  }
  return out;
}

double parse_number(const Token& t) {
  std::string_view s = t.text;
  if (!s.empty() && s.front() == '+') {
    s.remove_prefix(1);
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty() || !std::isfinite(v)) {
    throw ParseError(ParseErrorKind::MalformedNumber, t.line, t.column,
                     "'" + std::string(t.text) + "' is not a finite decimal number");
  }
  return v;
}

std::size_t parse_dim(const Token& t) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size() || v == 0 ||
      v > static_cast<std::size_t>(std::numeric_limits<int>::max())) {
    throw ParseError(ParseErrorKind::BadDims, t.line, t.column,
                     "'" + std::string(t.text) + "' is not a positive dimension");
  }
  return v;
}

}  // namespace

QTensor parse_qt(std::string_view text) {
  const std::vector<Token> tokens = tokenize(text);
  if (tokens.empty() || tokens[0].text != "QT1") {
    const std::size_t line = tokens.empty() ? 1 : tokens[0].line;
    const std::size_t col = tokens.empty() ? 1 : tokens[0].column;
    throw ParseError(ParseErrorKind::BadMagic, line, col, "expected 'QT1'");
  }
  if (tokens.size() < 4) {
    const Token& last = tokens.back();
    throw ParseError(ParseErrorKind::BadDims, last.line, last.column, "expected three dimensions");
  }
  const std::size_t n1 = parse_dim(tokens[1]);
  const std::size_t n2 = parse_dim(tokens[2]);
  const std::size_t n3 = parse_dim(tokens[3]);
  constexpr std::size_t kMaxEntries = std::size_t{1} << 32;
  if (n1 > kMaxEntries / n2 || n1 * n2 > kMaxEntries / n3) {
    throw ParseError(ParseErrorKind::BadDims, tokens[1].line, tokens[1].column, "tensor size overflows");
  }
  const std::size_t entries = n1 * n2 * n3;
  const std::size_t numbers = tokens.size() - 4;
  if (numbers != 4 * entries) {
    const Token& where = numbers > 4 * entries ? tokens[4 + 4 * entries] : tokens.back();
    throw ParseError(ParseErrorKind::EntryCountMismatch, where.line, where.column,
                     "expected " + std::to_string(entries) + " entries (" + std::to_string(4 * entries) +
                         " numbers), found " + std::to_string(numbers) + " numbers");
  }
  QTensor out(n1, n2, n3);
  auto& data = out.entries();
  for (std::size_t e = 0; e < entries; ++e) {
    const Token* t = &tokens[4 + 4 * e];
    data[e] = {parse_number(t[0]), parse_number(t[1]), parse_number(t[2]), parse_number(t[3])};
  }
  return out;
}

QTensor read_qt_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_qt(buf.str());
}

void serialize_qt(std::ostream& os, const QTensor& a, std::string_view comment) {
  os << "QT1\n";
  std::size_t start = 0;
  while (start < comment.size()) {
    const std::size_t end = std::min(comment.find('\n', start), comment.size());
    os << "# " << comment.substr(start, end - start) << '\n';
    start = end + 1;
  }
  os << a.n1() << ' ' << a.n2() << ' ' << a.n3() << '\n';
  char buf[32];
  auto put = [&](double v) {
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    os.write(buf, res.ptr - buf);
  };
  for (const auto& q : a.entries()) {
    put(q.w);
    os << ' ';
    put(q.x);
    os << ' ';
    put(q.y);
    os << ' ';
    put(q.z);
    os << '\n';
  }
}

std::string serialize_qt(const QTensor& a, std::string_view comment) {
  std::ostringstream os;
  serialize_qt(os, a, comment);
  return os.str();
}

void write_qt_file(const std::filesystem::path& path, const QTensor& a, std::string_view comment) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error("cannot write " + path.string());
  }
  serialize_qt(out, a, comment);
  if (!out) {
    throw Error("failed writing " + path.string());
  }
}

Quaternion parse_quaternion_literal(std::string_view text) {
  auto fail = [&] {
    return ParseError(ParseErrorKind::MalformedNumber, 1, 1, "bad quaternion literal '" + std::string(text) + "'");
  };
  Quaternion q;
  std::size_t i = 0;
  bool any = false;
  while (i < text.size()) {
    double sign = 1.0;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1.0 : 1.0;
      ++i;
    } else if (any) {
      throw fail();
    }
    const std::size_t start = i;
    while (i < text.size() && ((text[i] >= '0' && text[i] <= '9') || text[i] == '.')) {
      ++i;
    }
    double magnitude = 1.0;
    if (i > start) {
      const auto [ptr, ec] = std::from_chars(text.data() + start, text.data() + i, magnitude);
      if (ec != std::errc() || ptr != text.data() + i) {
        throw fail();
      }
    }
    const char unit = i < text.size() ? text[i] : '\0';
    if (unit == 'i' || unit == 'j' || unit == 'k') {
      ++i;
    } else if (i == start) {
      throw fail();
    }
    const double v = sign * magnitude;
    switch (unit) {
      case 'i': q.x += v; break;
      case 'j': q.y += v; break;
      case 'k': q.z += v; break;
      default: q.w += v; break;
    }
    any = true;
  }
  if (!any) {
    throw fail();
  }
  return q;
}

}  // namespace qtgi
