#include "matising/io.hpp"

#include <cctype>
#include <sstream>
#include <vector>

#include "matising/errors.hpp"

namespace matising {

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

bool content_line(const std::string& line) {
  for (char c : line) {
    if (c == '#') return false;
    if (!std::isspace(static_cast<unsigned char>(c))) return true;
  }
  return false;
}

/// Rational or plain decimal ("1.25" -> 5/4), nonnegative.
Rat parse_weight(const std::string& token) {
  Rat value;
  auto dot = token.find('.');
  if (dot != std::string::npos && token.find('/') != std::string::npos) {
    throw ParseError("weight '" + token + "' mixes decimal and rational syntax");
  }
  if (dot == std::string::npos) {
    value = parse_rational(token);
  } else {
    const std::string whole = token.substr(0, dot);
    const std::string frac = token.substr(dot + 1);
    if (frac.find_first_not_of("0123456789") != std::string::npos ||
        (whole.empty() && frac.empty())) {
      throw ParseError("bad decimal weight '" + token + "'");
    }
    Rat numer = whole.empty() ? Rat(0) : parse_rational(whole);
    if (numer < 0 || (!whole.empty() && whole[0] == '-')) {
      throw ParseError("negative weight '" + token + "'");
    }
    Rat denom = 1;
    for (char c : frac) {
      numer = numer * 10 + (c - '0');
      denom *= 10;
    }
    value = numer / denom;
    value.canonicalize();
  }
  if (value < 0) throw ParseError("negative weight '" + token + "'");
  return value;
}

}  // namespace

WeightedMatroid parse_instance(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (content_line(line)) lines.push_back(line);
  }
  if (lines.empty()) throw ParseError("empty instance");

  std::size_t cursor = 0;
  const auto header = split_tokens(lines[cursor++]);
  if (header.size() != 2) {
    throw ParseError("header must be 'm r' (element count, representation rows)");
  }
  std::size_t m = 0, r = 0;
  if (header[0].find_first_not_of("0123456789") != std::string::npos ||
      header[1].find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError("bad header counts '" + lines[0] + "'");
  }
  try {
    m = std::stoul(header[0]);
    r = std::stoul(header[1]);
  } catch (const std::exception&) {
    throw ParseError("bad header counts '" + lines[0] + "'");
  }
  if (m == 0 || m > kMaxDim) {
    throw ParseError("element count must be between 1 and " + std::to_string(kMaxDim));
  }
  if (r == 0 || r > kMaxDim) {
    throw ParseError("row count must be between 1 and " + std::to_string(kMaxDim));
  }

  std::vector<std::string> rows;
  for (std::size_t i = 0; i < r; ++i) {
    if (cursor >= lines.size()) throw ParseError("missing representation row");
    const auto toks = split_tokens(lines[cursor++]);
    if (toks.size() != 1 || toks[0].size() != m ||
        toks[0].find_first_not_of("01") != std::string::npos) {
      throw ParseError("representation row " + std::to_string(i + 1) +
                       " must be exactly " + std::to_string(m) + " characters of 0/1");
    }
    rows.push_back(toks[0]);
  }

  std::vector<Rat> gamma;
  std::vector<Label> labels;
  bool saw_weights = false;
  while (cursor < lines.size()) {
    auto toks = split_tokens(lines[cursor++]);
    if (toks[0] == "WEIGHTS") {
      if (saw_weights) throw ParseError("duplicate WEIGHTS line");
      if (toks.size() != m + 1) {
        throw ParseError("WEIGHTS line needs exactly " + std::to_string(m) + " values");
      }
      for (std::size_t i = 1; i < toks.size(); ++i) gamma.push_back(parse_weight(toks[i]));
      saw_weights = true;
    } else if (toks[0] == "ELEMENTS") {
      if (!labels.empty()) throw ParseError("duplicate ELEMENTS line");
      if (toks.size() != m + 1) {
        throw ParseError("ELEMENTS line needs exactly " + std::to_string(m) + " labels");
      }
      labels.assign(toks.begin() + 1, toks.end());
    } else {
      throw ParseError("unexpected line '" + toks[0] + "'");
    }
  }
  if (!saw_weights) throw ParseError("missing WEIGHTS line");
  if (labels.empty()) {
    for (std::size_t i = 0; i < m; ++i) labels.push_back("e" + std::to_string(i + 1));
  } else if (LabelSet(labels.begin(), labels.end()).size() != labels.size()) {
    throw ParseError("duplicate element labels");
  }

  BinaryMatroid matroid(Gf2Matrix::from_strings(rows), std::move(labels));
  return make_weighted(std::move(matroid), std::move(gamma));
}

std::string print_instance(const WeightedMatroid& w) {
  const Gf2Matrix& mat = w.matroid.matrix();
  std::ostringstream os;
  os << mat.cols() << ' ' << mat.rows() << '\n';
  for (std::size_t i = 0; i < mat.rows(); ++i) {
    for (std::size_t j = 0; j < mat.cols(); ++j) os << (mat.get(i, j) ? '1' : '0');
    os << '\n';
  }
  os << "WEIGHTS";
  for (const Rat& g : w.gamma) os << ' ' << to_string(g);
  os << '\n';
  os << "ELEMENTS";
  for (const Label& e : w.matroid.labels()) os << ' ' << e;
  os << '\n';
  return os.str();
}

namespace {

/// Tokens: words (labels, tags, integers) and the punctuation ()[],
struct CertLexer {
  const std::string& text;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("certificate parse error at offset " + std::to_string(pos) +
                     ": " + what);
  }

  bool at_end() {
    skip_space();
    return pos >= text.size();
  }

  char peek() {
    skip_space();
    if (pos >= text.size()) fail("unexpected end of input");
    return text[pos];
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  static bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
           c == '+' || c == '.';
  }

  std::string word() {
    skip_space();
    std::size_t start = pos;
    while (pos < text.size() && word_char(text[pos])) ++pos;
    if (pos == start) fail("expected a name");
    return text.substr(start, pos - start);
  }

  std::vector<Label> label_list() {
    expect('[');
    std::vector<Label> out;
    if (peek() != ']') {
      out.push_back(word());
      while (peek() == ',') {
        ++pos;
        out.push_back(word());
      }
    }
    expect(']');
    return out;
  }

  CertShape tree() {
    const std::string head = word();
    CertShape shape;
    if (head == "leaf") {
      expect('(');
      const std::string tag = word();
      const auto parsed = leaf_tag_from(tag);
      if (!parsed) fail("unknown leaf tag '" + tag + "'");
      shape.tag = *parsed;
      expect(',');
      shape.elements = label_list();
      expect(')');
    } else if (head == "sum") {
      expect('(');
      const std::string arity = word();
      if (arity != "1" && arity != "2" && arity != "3") {
        fail("sum arity must be 1, 2 or 3, got '" + arity + "'");
      }
      shape.k = arity[0] - '0';
      expect(',');
      shape.shared = label_list();
      expect(',');
      shape.left = std::make_unique<CertShape>(tree());
      expect(',');
      shape.right = std::make_unique<CertShape>(tree());
      expect(')');
    } else {
      fail("expected 'leaf' or 'sum', got '" + head + "'");
    }
    return shape;
  }
};

void print_shape(const CertShape& shape, std::ostringstream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (shape.is_leaf()) {
    os << pad << "leaf(" << to_string(*shape.tag) << ", [";
    for (std::size_t i = 0; i < shape.elements.size(); ++i) {
      if (i) os << ", ";
      os << shape.elements[i];
    }
    os << "])";
    return;
  }
  os << pad << "sum(" << shape.k << ", [";
  for (std::size_t i = 0; i < shape.shared.size(); ++i) {
    if (i) os << ", ";
    os << shape.shared[i];
  }
  os << "],\n";
  print_shape(*shape.left, os, indent + 1);
  os << ",\n";
  print_shape(*shape.right, os, indent + 1);
  os << ")";
}

}  // namespace

CertShape parse_certificate(const std::string& text) {
  CertLexer lexer{text};
  CertShape shape = lexer.tree();
  if (!lexer.at_end()) lexer.fail("trailing input after the tree");
  return shape;
}

std::string print_certificate(const CertShape& shape) {
  std::ostringstream os;
  print_shape(shape, os, 0);
  os << '\n';
  return os.str();
}

}  // namespace matising
