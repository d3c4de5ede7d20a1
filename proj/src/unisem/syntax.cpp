#include "unisem/syntax.hpp"

#include <cctype>
#include <unordered_map>

#include "unisem/error.hpp"

namespace unisem {

namespace {

bool is_reserved_upper(std::string_view name) {
  return name == "L" || name == "R" || name == "M" || name == "A" || name == "A0";
}

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
 public:
  Parser(std::string_view text, SymbolTable& symbols, std::size_t line)
      : text_(text), symbols_(symbols), line_(line) {}

  Term term() {
    Term left = primary();
    skip_ws();
    if (peek() == '*') {
      ++pos_;
      Term right = term();
      return Term::pair(std::move(left), std::move(right));
    }
    return left;
  }

  Flow flow() {
    Term head = term();
    skip_ws();
    if (text_.substr(pos_, 2) != "<-") fail("expected '<-'");
    pos_ += 2;
    Term body = term();
    expect_end();
    check_safe(head, body);
    return Flow(std::move(head), std::move(body));
  }

  void expect_end() {
    skip_ws();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
  }

 private:
  Term primary() {
    skip_ws();
    const std::size_t start = pos_;
    char c = peek();
    if (c == '(') {
      ++pos_;
      Term t = term();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return t;
    }
    if (c == '#') {
      ++pos_;
      return Term::constant(reserved::star());
    }
    if (!ident_char(c) || c == '_') fail(c == '\0' ? "unexpected end of input" : std::string("unexpected '") + c + "'");
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    if (std::isupper(static_cast<unsigned char>(name[0])) && !is_reserved_upper(name)) {
      auto [it, fresh] = vars_.try_emplace(name, static_cast<VarId>(vars_.size()));
      if (fresh) var_names_.push_back(name);
      return Term::variable(it->second);
    }
    std::vector<Term> args;
    skip_ws();
    if (peek() == '(') {
      ++pos_;
      for (;;) {
        args.push_back(term());
        skip_ws();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        if (peek() == ')') {
          ++pos_;
          break;
        }
        fail("expected ',' or ')'");
      }
    }
    const Symbol* s = nullptr;
    try {
      s = symbols_.intern(name, static_cast<std::uint32_t>(args.size()));
    } catch (const Error& e) {
      column_ = start;
      fail(e.what());
    }
    return Term::apply(s, std::move(args));
  }

  void check_safe(const Term& head, const Term& body) {
    std::set<VarId> bv = variables(body);
    for (VarId x : variables(head)) {
      if (!bv.contains(x)) {
        throw Error(ErrorCode::UnsafeFlow, "line " + std::to_string(line_) + ": head variable " + var_names_[x] +
                                               " does not occur in the body");
      }
    }
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) {
    std::size_t col = (column_ != std::string::npos ? column_ : pos_) + 1;
    throw Error(ErrorCode::Parse, "line " + std::to_string(line_) + ", column " + std::to_string(col) + ": " + msg);
  }

  std::string_view text_;
  SymbolTable& symbols_;
  std::size_t line_;
  std::size_t pos_ = 0;
  std::size_t column_ = std::string::npos;
  std::unordered_map<std::string, VarId> vars_;
  std::vector<std::string> var_names_;
};

std::string_view strip_comment(std::string_view line) {
  auto p = line.find('%');
  return p == std::string_view::npos ? line : line.substr(0, p);
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

Term parse_term(std::string_view text, SymbolTable& symbols) {
  Parser p(strip_comment(text), symbols, 1);
  Term t = p.term();
  p.expect_end();
  return t;
}

Flow parse_flow(std::string_view text, SymbolTable& symbols) {
  Parser p(strip_comment(text), symbols, 1);
  return p.flow();
}

ParsedWiring parse_wiring(std::string_view text, SymbolTable& symbols) {
  ParsedWiring out;
  std::vector<Flow> flows;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::string_view code = strip_comment(line);
    if (code.size() < line.size()) {
      std::string comment = trim(line.substr(code.size() + 1));
      auto colon = comment.find(':');
      if (trim(code).empty() && colon != std::string::npos && colon > 0 &&
          comment.find(' ') > colon) {
        out.headers[comment.substr(0, colon)] = trim(std::string_view(comment).substr(colon + 1));
      }
    }
    if (trim(code).empty()) continue;
    Parser p(code, symbols, line_no);
    flows.push_back(p.flow());
  }
  out.wiring = Wiring(std::move(flows));
  return out;
}

std::string format_wiring(const Wiring& w, const std::map<std::string, std::string>& headers) {
  std::string out;
  for (const auto& [k, v] : headers) out += "% " + k + ": " + v + "\n";
  out += to_string(w);
  return out;
}

}  // namespace unisem
