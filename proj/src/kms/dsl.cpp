#include "kms/dsl.hpp"

#include <cctype>
#include <stdexcept>

namespace kms {

PartMap zero_map(const SpaceDesc& domain) {
  return PartMap{"zero", domain, scalar_space(), MatQ(1, domain.dim)};
}

PartMap embed_scalar_codomain_part(const PartMap& p, int n) {
  if (p.codomain.dim != 1)
    throw std::invalid_argument("embed: part map codomain is not scalar");
  SpaceDesc cod = matrix_space(n);
  MatQ m(cod.dim, p.domain.dim);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p.domain.dim; ++j)
      m.at(i * n + i, j) = p.m.at(0, j);
  return PartMap{p.name, p.domain, cod, std::move(m)};
}

namespace {

enum class Tok { Name, Number, Plus, Star, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

[[noreturn]] void fail(std::size_t pos, const std::string& msg) {
  throw std::invalid_argument("at " + std::to_string(pos) + ": " + msg);
}

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) ||
                              s[i] == '_')) {
        name.push_back(static_cast<char>(
            std::tolower(static_cast<unsigned char>(s[i]))));
        ++i;
      }
      out.push_back({Tok::Name, std::move(name), start});
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '-' && i + 1 < s.size() &&
                std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      std::string num;
      if (c == '-') {
        num.push_back('-');
        ++i;
      }
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
        num.push_back(s[i++]);
      if (i < s.size() && s[i] == '/') {
        num.push_back(s[i++]);
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
          fail(i, "expected digits after '/'");
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
          num.push_back(s[i++]);
      }
      out.push_back({Tok::Number, std::move(num), start});
    } else if (c == '+') {
      out.push_back({Tok::Plus, "+", i++});
    } else if (c == '*') {
      out.push_back({Tok::Star, "*", i++});
    } else if (c == '(') {
      out.push_back({Tok::LParen, "(", i++});
    } else if (c == ')') {
      out.push_back({Tok::RParen, ")", i++});
    } else {
      fail(i, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

bool is_part_name(const std::string& s) {
  return s == "id" || s == "transpose" || s == "sym" || s == "skew" ||
         s == "tr" || s == "dev" || s == "devsym" || s == "skewtr" ||
         s == "zero";
}

bool is_op_name(const std::string& s) {
  return s == "curl" || s == "div" || s == "inc" || s == "grad";
}

struct Parser {
  const std::vector<Token>& toks;
  std::size_t at = 0;
  int n;
  bool embed;

  const Token& peek() const { return toks[at]; }
  Token take() { return toks[at++]; }

  bool scalar_codomain(const DslValue& v) const {
    return std::visit([](const auto& x) { return x.codomain.dim == 1; }, v);
  }

  DslValue embed_value(const DslValue& v, std::size_t pos) const {
    if (!embed) fail(pos, "scalar codomain where a matrix codomain is needed");
    if (const auto* p = std::get_if<PartMap>(&v))
      return embed_scalar_codomain_part(*p, n);
    return embed_scalar_codomain(std::get<HomOperator>(v), n);
  }

  HomOperator op_by_name(const std::string& name, std::size_t pos) const {
    if (name == "curl") {
      if (n != 2 && n != 3) fail(pos, "curl is defined for n = 2 and n = 3");
      return curl_op(n);
    }
    if (name == "div") return div_op(n);
    if (name == "inc") {
      if (n != 3) fail(pos, "inc is defined for n = 3");
      return inc_op();
    }
    return gradient_operator(part_map("id", n), n);
  }

  DslValue apply(const Token& name, DslValue inner) {
    if (is_part_name(name.text)) {
      PartMap s = part_map(name.text, n);
      if (scalar_codomain(inner) && !(s.domain == scalar_space()))
        inner = embed_value(inner, name.pos);
      if (const auto* p = std::get_if<PartMap>(&inner)) {
        if (!(s.domain == p->codomain))
          fail(name.pos, "'" + name.text + "' cannot be applied to '" +
                             p->name + "' (codomain " + p->codomain.label +
                             ", expected " + s.domain.label + ")");
        return PartMap{name.text + "(" + p->name + ")", p->domain, s.codomain,
                       mat_mul(s.m, p->m)};
      }
      const auto& b = std::get<HomOperator>(inner);
      if (!(s.domain == b.codomain))
        fail(name.pos, "'" + name.text + "' cannot be applied to '" + b.name +
                           "' (codomain " + b.codomain.label + ", expected " +
                           s.domain.label + ")");
      return postcompose(s, b);
    }
    HomOperator b = op_by_name(name.text, name.pos);
    if (scalar_codomain(inner) && !(b.domain == scalar_space()))
      inner = embed_value(inner, name.pos);
    if (const auto* p = std::get_if<PartMap>(&inner)) {
      if (!(b.domain == p->codomain))
        fail(name.pos, "'" + name.text + "' cannot be applied to '" + p->name +
                           "' (codomain " + p->codomain.label + ", expected " +
                           b.domain.label + ")");
      return precompose(b, *p);
    }
    const auto& in = std::get<HomOperator>(inner);
    if (!(b.domain == in.codomain))
      fail(name.pos, "'" + name.text + "' cannot be applied to '" + in.name +
                         "' (codomain " + in.codomain.label + ", expected " +
                         b.domain.label + ")");
    return compose_ops(b, in);
  }

  DslValue atom() {
    Token t = take();
    if (t.kind == Tok::LParen) {
      DslValue v = expr();
      if (peek().kind != Tok::RParen) fail(peek().pos, "expected ')'");
      take();
      return v;
    }
    if (t.kind != Tok::Name)
      fail(t.pos, "expected a name or '('");
    if (!is_part_name(t.text) && !is_op_name(t.text))
      fail(t.pos, "unknown name '" + t.text + "'");
    if (peek().kind == Tok::LParen) {
      take();
      DslValue inner = expr();
      if (peek().kind != Tok::RParen) fail(peek().pos, "expected ')'");
      take();
      return apply(t, std::move(inner));
    }
    if (is_part_name(t.text)) return part_map(t.text, n);
    return op_by_name(t.text, t.pos);
  }

  DslValue term() {
    if (peek().kind == Tok::Number) {
      Token t = take();
      Rational c = rat_parse(t.text);
      if (peek().kind != Tok::Star)
        fail(peek().pos, "expected '*' after the coefficient");
      take();
      DslValue v = atom();
      if (auto* p = std::get_if<PartMap>(&v)) {
        p->m = mat_scale(c, p->m);
        p->name = t.text + "*" + p->name;
        return v;
      }
      return scale_op(c, std::get<HomOperator>(v));
    }
    return atom();
  }

  DslValue expr() {
    DslValue v = term();
    while (peek().kind == Tok::Plus) {
      Token plus = take();
      DslValue w = term();
      bool vs = scalar_codomain(v), ws = scalar_codomain(w);
      if (vs != ws) {
        if (vs) v = embed_value(v, plus.pos);
        else w = embed_value(w, plus.pos);
      }
      if (v.index() != w.index())
        fail(plus.pos, "cannot add a part map and an operator");
      if (auto* p = std::get_if<PartMap>(&v)) {
        const auto& q = std::get<PartMap>(w);
        if (!(p->domain == q.domain) || !(p->codomain == q.codomain))
          fail(plus.pos, "cannot add maps of different shapes");
        p->m = mat_add(p->m, q.m);
        p->name = p->name + "+" + q.name;
      } else {
        v = add_ops(std::get<HomOperator>(v), std::get<HomOperator>(w));
      }
    }
    return v;
  }
};

}  // namespace

DslValue parse_expression(const std::string& text, int n, bool embed_scalar) {
  if (n < 2) throw std::invalid_argument("dimension must be at least 2");
  std::vector<Token> toks = tokenize(text);
  Parser p{toks, 0, n, embed_scalar};
  DslValue v = p.expr();
  if (p.peek().kind != Tok::End)
    fail(p.peek().pos, "unexpected trailing input");
  return v;
}

PartMap parse_partmap(const std::string& text, int n) {
  DslValue v = parse_expression(text, n);
  if (const auto* p = std::get_if<PartMap>(&v)) return *p;
  throw std::invalid_argument("'" + text + "' is an operator, not a part map");
}

HomOperator parse_operator(const std::string& text, int n, bool embed_scalar) {
  DslValue v = parse_expression(text, n, embed_scalar);
  if (const auto* b = std::get_if<HomOperator>(&v)) {
    if (embed_scalar && b->codomain.dim == 1)
      return embed_scalar_codomain(*b, n);
    return *b;
  }
  throw std::invalid_argument("'" + text + "' is a part map, not an operator");
}

}  // namespace kms
