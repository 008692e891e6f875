#include "kms/operator_model.hpp"

#include <stdexcept>

namespace kms {

using nlohmann::json;

SpaceDesc matrix_space(int n) {
  return SpaceDesc{"M" + std::to_string(n), n * n, n, n};
}

SpaceDesc vector_space(int n) {
  return SpaceDesc{"R" + std::to_string(n), n, 0, 0};
}

SpaceDesc scalar_space() { return SpaceDesc{"R", 1, 0, 0}; }

static int midx(int i, int j, int n) { return i * n + j; }

std::vector<MultiIdx> multi_indices(int n, int deg) {
  std::vector<MultiIdx> out;
  MultiIdx cur(n, 0);
  // Ascending lexicographic enumeration by recursion on the first slot.
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == n - 1) {
      cur[pos] = static_cast<std::uint32_t>(left);
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[pos] = static_cast<std::uint32_t>(v);
      self(self, pos + 1, left - v);
    }
  };
  if (n > 0) rec(rec, 0, deg);
  return out;
}

static Rational xi_pow(const VecQ& xi, const MultiIdx& alpha) {
  Rational r = 1;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (alpha[i] != 0) r *= rat_pow(xi[i], alpha[i]);
  return r;
}

MatQ symbol_eval(const HomOperator& b, const VecQ& xi) {
  if (static_cast<int>(xi.size()) != b.dim_n)
    throw std::invalid_argument("direction has wrong dimension");
  MatQ m(b.codomain.dim, b.domain.dim);
  for (const auto& [alpha, ba] : b.coeff) {
    Rational c = xi_pow(xi, alpha);
    if (c == 0) continue;
    for (std::size_t i = 0; i < m.a.size(); ++i) m.a[i] += c * ba.a[i];
  }
  return m;
}

std::vector<GaussQ> symbol_eval_gauss(const HomOperator& b,
                                      const std::vector<GaussQ>& xi) {
  if (static_cast<int>(xi.size()) != b.dim_n)
    throw std::invalid_argument("direction has wrong dimension");
  std::vector<GaussQ> m(static_cast<std::size_t>(b.codomain.dim) * b.domain.dim);
  for (const auto& [alpha, ba] : b.coeff) {
    GaussQ c{Rational(1), Rational(0)};
    for (std::size_t i = 0; i < alpha.size(); ++i)
      for (std::uint32_t e = 0; e < alpha[i]; ++e) c = c * xi[i];
    if (c.is_zero()) continue;
    for (std::size_t i = 0; i < m.size(); ++i)
      m[i] = m[i] + GaussQ(ba.a[i]) * c;
  }
  return m;
}

SymbolMatrix symbol_matrix(const HomOperator& b) {
  SymbolMatrix s;
  s.rows = b.codomain.dim;
  s.cols = b.domain.dim;
  s.nvars = b.dim_n;
  s.e.assign(static_cast<std::size_t>(s.rows) * s.cols, Poly(s.nvars));
  for (const auto& [alpha, ba] : b.coeff) {
    Mono m(alpha.begin(), alpha.end());
    for (int i = 0; i < s.rows; ++i)
      for (int j = 0; j < s.cols; ++j)
        if (ba.at(i, j) != 0) s.at(i, j).add_term(m, ba.at(i, j));
  }
  return s;
}

HomOperator restrict_op(const HomOperator& b, const std::vector<VecQ>& basis,
                        const std::string& label) {
  MatQ inj = from_cols(b.domain.dim, basis);
  HomOperator r = b;
  r.name = b.name + "|" + label;
  r.domain = SpaceDesc{label, static_cast<int>(basis.size()), 0, 0};
  r.coeff.clear();
  for (const auto& [alpha, ba] : b.coeff) {
    MatQ m = mat_mul(ba, inj);
    if (!m.is_zero()) r.coeff.emplace(alpha, std::move(m));
  }
  return r;
}

HomOperator postcompose(const PartMap& s, const HomOperator& b) {
  if (!(s.domain == b.codomain))
    throw std::invalid_argument("part map domain does not match operator codomain");
  HomOperator r = b;
  r.name = s.name + "(" + b.name + ")";
  r.codomain = s.codomain;
  r.coeff.clear();
  for (const auto& [alpha, ba] : b.coeff) {
    MatQ m = mat_mul(s.m, ba);
    if (!m.is_zero()) r.coeff.emplace(alpha, std::move(m));
  }
  return r;
}

HomOperator precompose(const HomOperator& b, const PartMap& s) {
  if (!(b.domain == s.codomain))
    throw std::invalid_argument("operator domain does not match part map codomain");
  HomOperator r = b;
  r.name = b.name + "∘" + s.name;
  r.domain = s.domain;
  r.coeff.clear();
  for (const auto& [alpha, ba] : b.coeff) {
    MatQ m = mat_mul(ba, s.m);
    if (!m.is_zero()) r.coeff.emplace(alpha, std::move(m));
  }
  return r;
}

HomOperator compose_ops(const HomOperator& outer, const HomOperator& inner) {
  if (outer.dim_n != inner.dim_n)
    throw std::invalid_argument("operator base dimensions differ");
  if (!(inner.codomain == outer.domain))
    throw std::invalid_argument("inner codomain does not match outer domain");
  HomOperator r;
  r.name = outer.name + "(" + inner.name + ")";
  r.order = outer.order + inner.order;
  r.dim_n = outer.dim_n;
  r.domain = inner.domain;
  r.codomain = outer.codomain;
  for (const auto& [a, ma] : outer.coeff)
    for (const auto& [b, mb] : inner.coeff) {
      MultiIdx g(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) g[i] = a[i] + b[i];
      MatQ prod = mat_mul(ma, mb);
      auto it = r.coeff.find(g);
      if (it == r.coeff.end())
        r.coeff.emplace(std::move(g), std::move(prod));
      else
        it->second = mat_add(it->second, prod);
    }
  for (auto it = r.coeff.begin(); it != r.coeff.end();)
    it = it->second.is_zero() ? r.coeff.erase(it) : std::next(it);
  return r;
}

HomOperator add_ops(const HomOperator& a, const HomOperator& b) {
  if (a.order != b.order || a.dim_n != b.dim_n)
    throw std::invalid_argument("can only add operators of equal order and base dimension");
  if (!(a.domain == b.domain) || !(a.codomain == b.codomain))
    throw std::invalid_argument("operator sum requires matching spaces");
  HomOperator r = a;
  r.name = a.name + "+" + b.name;
  for (const auto& [alpha, mb] : b.coeff) {
    auto it = r.coeff.find(alpha);
    if (it == r.coeff.end())
      r.coeff.emplace(alpha, mb);
    else
      it->second = mat_add(it->second, mb);
  }
  for (auto it = r.coeff.begin(); it != r.coeff.end();)
    it = it->second.is_zero() ? r.coeff.erase(it) : std::next(it);
  return r;
}

HomOperator scale_op(const Rational& c, const HomOperator& a) {
  HomOperator r = a;
  r.coeff.clear();
  if (c == 0) return r;
  for (const auto& [alpha, ma] : a.coeff) r.coeff.emplace(alpha, mat_scale(c, ma));
  return r;
}

HomOperator embed_scalar_codomain(const HomOperator& a, int n) {
  if (a.codomain.dim != 1)
    throw std::invalid_argument("scalar embedding requires a scalar codomain");
  SpaceDesc cod = matrix_space(n);
  MatQ embed(cod.dim, 1);  // c -> c * identity matrix
  for (int i = 0; i < n; ++i) embed.at(midx(i, i, n), 0) = 1;
  HomOperator r = a;
  r.codomain = cod;
  r.coeff.clear();
  for (const auto& [alpha, ma] : a.coeff) r.coeff.emplace(alpha, mat_mul(embed, ma));
  return r;
}

HomOperator gradient_operator(const PartMap& a, int n) {
  if (!a.domain.is_matrix() || a.domain.cols != n)
    throw std::invalid_argument("gradient operator needs a part map on m x n matrices");
  int m = a.domain.rows;
  HomOperator r;
  r.name = a.name + "(grad)";
  r.order = 1;
  r.dim_n = n;
  r.domain = vector_space(m);
  r.codomain = a.codomain;
  for (int c = 0; c < n; ++c) {
    MatQ bc(a.codomain.dim, m);
    for (int i = 0; i < m; ++i) {
      // Column i: A[e_i otimes e_c].
      for (int o = 0; o < a.codomain.dim; ++o)
        bc.at(o, i) = a.m.at(o, midx(i, c, n));
    }
    if (!bc.is_zero()) {
      MultiIdx alpha(n, 0);
      alpha[c] = 1;
      r.coeff.emplace(std::move(alpha), std::move(bc));
    }
  }
  return r;
}

PartMap part_map(const std::string& name, int n) {
  SpaceDesc dom = matrix_space(n);
  auto make = [&](const std::string& nm, SpaceDesc cod, MatQ m) {
    return PartMap{nm, dom, std::move(cod), std::move(m)};
  };
  if (name == "id") return make(name, dom, MatQ::identity(dom.dim));
  if (name == "transpose") {
    MatQ m(dom.dim, dom.dim);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(midx(j, i, n), midx(i, j, n)) = 1;
    return make(name, dom, std::move(m));
  }
  if (name == "sym" || name == "skew") {
    Rational s = name == "sym" ? Rational(1, 2) : Rational(-1, 2);
    MatQ m(dom.dim, dom.dim);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        m.at(midx(i, j, n), midx(i, j, n)) += Rational(1, 2);
        m.at(midx(i, j, n), midx(j, i, n)) += s;
      }
    return make(name, dom, std::move(m));
  }
  if (name == "tr") {
    MatQ m(1, dom.dim);
    for (int i = 0; i < n; ++i) m.at(0, midx(i, i, n)) = 1;
    return make(name, scalar_space(), std::move(m));
  }
  if (name == "dev") {
    MatQ m = MatQ::identity(dom.dim);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        m.at(midx(i, i, n), midx(k, k, n)) -= Rational(1, n);
    return make(name, dom, std::move(m));
  }
  if (name == "devsym") {
    PartMap d = part_map("dev", n), s = part_map("sym", n);
    return make(name, dom, mat_mul(d.m, s.m));
  }
  if (name == "skewtr") {
    // X -> skew X + tr(X) * identity.
    PartMap s = part_map("skew", n);
    MatQ m = s.m;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) m.at(midx(i, i, n), midx(k, k, n)) += 1;
    return make(name, dom, std::move(m));
  }
  if (name == "zero") return make(name, scalar_space(), MatQ(1, dom.dim));
  throw std::invalid_argument("unknown part map: " + name);
}

std::vector<std::string> part_map_names() {
  return {"id", "dev", "sym", "devsym", "skewtr", "skew", "tr"};
}

// Anti(z) with Anti(z) v = z x v (0-based coordinates).
static MatQ anti3(const VecQ& z) {
  MatQ m(3, 3);
  m.at(0, 1) = -z[2];
  m.at(0, 2) = z[1];
  m.at(1, 0) = z[2];
  m.at(1, 2) = -z[0];
  m.at(2, 0) = -z[1];
  m.at(2, 1) = z[0];
  return m;
}

static MatQ basis_matrix(int i, int j, int n) {
  MatQ e(n, n);
  e.at(i, j) = 1;
  return e;
}

HomOperator curl_op(int n) {
  if (n != 2 && n != 3) throw std::invalid_argument("curl defined for n=2,3");
  HomOperator r;
  r.name = "curl";
  r.order = 1;
  r.dim_n = n;
  r.domain = matrix_space(n);
  if (n == 3) {
    r.codomain = matrix_space(3);
    for (int c = 0; c < 3; ++c) {
      VecQ ec(3, Rational(0));
      ec[c] = 1;
      MatQ anti = anti3(ec);
      MatQ bc(9, 9);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          MatQ img = mat_mul(basis_matrix(i, j, 3), anti);
          for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
              bc.at(midx(a, b, 3), midx(i, j, 3)) = img.at(a, b);
        }
      if (!bc.is_zero()) {
        MultiIdx alpha(3, 0);
        alpha[c] = 1;
        r.coeff.emplace(std::move(alpha), std::move(bc));
      }
    }
  } else {
    // P -> P * (-xi_1, xi_0)^T  (0-based): coefficient of xi_0 picks column 1,
    // coefficient of xi_1 picks minus column 0.
    r.codomain = vector_space(2);
    for (int c = 0; c < 2; ++c) {
      MatQ bc(2, 4);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          if (c == 0 && j == 1) bc.at(i, midx(i, j, 2)) = 1;
          if (c == 1 && j == 0) bc.at(i, midx(i, j, 2)) = -1;
        }
      if (!bc.is_zero()) {
        MultiIdx alpha(2, 0);
        alpha[c] = 1;
        r.coeff.emplace(std::move(alpha), std::move(bc));
      }
    }
  }
  return r;
}

HomOperator div_op(int n) {
  HomOperator r;
  r.name = "div";
  r.order = 1;
  r.dim_n = n;
  r.domain = matrix_space(n);
  r.codomain = vector_space(n);
  for (int c = 0; c < n; ++c) {
    MatQ bc(n, n * n);
    for (int i = 0; i < n; ++i) bc.at(i, midx(i, c, n)) = 1;
    MultiIdx alpha(n, 0);
    alpha[c] = 1;
    r.coeff.emplace(std::move(alpha), std::move(bc));
  }
  return r;
}

HomOperator inc_op() {
  // Symbol: P -> Anti(xi) P Anti(xi)^T, quadratic in xi. Expand per basis
  // element with polynomial entries and collect multi-index coefficients.
  const int n = 3;
  HomOperator r;
  r.name = "inc";
  r.order = 2;
  r.dim_n = 3;
  r.domain = matrix_space(3);
  r.codomain = matrix_space(3);
  std::vector<Poly> anti(9, Poly(3));
  auto x = [&](int i) { return Poly::var(3, i); };
  auto set = [&](int i, int j, const Poly& p) { anti[midx(i, j, 3)] = p; };
  set(0, 1, -x(2));
  set(0, 2, x(1));
  set(1, 0, x(2));
  set(1, 2, -x(0));
  set(2, 0, -x(1));
  set(2, 1, x(0));
  auto mul3 = [&](const std::vector<Poly>& a, const std::vector<Poly>& b) {
    std::vector<Poly> c(9, Poly(3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          c[midx(i, j, 3)] =
              c[midx(i, j, 3)] + a[midx(i, k, 3)] * b[midx(k, j, 3)];
    return c;
  };
  std::vector<Poly> antiT(9, Poly(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) antiT[midx(i, j, 3)] = anti[midx(j, i, 3)];

  std::map<MultiIdx, MatQ> coeff;
  for (int bi = 0; bi < 3; ++bi)
    for (int bj = 0; bj < 3; ++bj) {
      std::vector<Poly> e(9, Poly(3));
      e[midx(bi, bj, 3)] = Poly::constant(3, Rational(1));
      std::vector<Poly> img = mul3(mul3(anti, e), antiT);
      for (int a = 0; a < 9; ++a)
        for (const auto& [m, c] : img[a].terms()) {
          MultiIdx alpha(m.begin(), m.end());
          auto [it, inserted] = coeff.try_emplace(alpha, MatQ(9, 9));
          it->second.at(a, midx(bi, bj, 3)) = c;
        }
    }
  for (auto& [alpha, m] : coeff)
    if (!m.is_zero()) r.coeff.emplace(alpha, m);
  return r;
}

// --- serialization ----------------------------------------------------------

json space_to_json(const SpaceDesc& s) {
  return json{{"label", s.label}, {"dim", s.dim}, {"rows", s.rows}, {"cols", s.cols}};
}

SpaceDesc space_from_json(const json& j) {
  SpaceDesc s;
  s.label = j.at("label").get<std::string>();
  s.dim = j.at("dim").get<int>();
  s.rows = j.value("rows", 0);
  s.cols = j.value("cols", 0);
  if (s.dim <= 0) throw std::invalid_argument("space dimension must be positive");
  if (s.rows < 0 || s.cols < 0 || (s.rows > 0) != (s.cols > 0) ||
      (s.rows > 0 && s.rows * s.cols != s.dim))
    throw std::invalid_argument("inconsistent matrix shape for space " + s.label);
  return s;
}

json matq_to_json(const MatQ& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(rat_str(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

MatQ matq_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("matrix must be a nonempty array of rows");
  int rows = static_cast<int>(j.size());
  int cols = static_cast<int>(j.at(0).size());
  MatQ m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j.at(i).size()) != cols)
      throw std::invalid_argument("ragged matrix rows");
    for (int c = 0; c < cols; ++c)
      m.at(i, c) = rat_parse(j.at(i).at(c).get<std::string>());
  }
  return m;
}

json vecq_to_json(const VecQ& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rat_str(x));
  return a;
}

VecQ vecq_from_json(const json& j) {
  VecQ v;
  for (const auto& x : j) v.push_back(rat_parse(x.get<std::string>()));
  return v;
}

json poly_to_json(const Poly& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) {
    json exp = json::array();
    for (auto e : m) exp.push_back(e);
    terms.push_back(json{{"exp", std::move(exp)}, {"coeff", rat_str(c)}});
  }
  return json{{"nvars", p.nvars()}, {"terms", std::move(terms)}};
}

Poly poly_from_json(const json& j) {
  Poly p(j.at("nvars").get<int>());
  for (const auto& t : j.at("terms")) {
    Mono m;
    for (const auto& e : t.at("exp")) m.push_back(e.get<std::uint32_t>());
    p.add_term(m, rat_parse(t.at("coeff").get<std::string>()));
  }
  return p;
}

json partmap_to_json(const PartMap& p) {
  return json{{"kind", "partmap"},
              {"name", p.name},
              {"domain", space_to_json(p.domain)},
              {"codomain", space_to_json(p.codomain)},
              {"matrix", matq_to_json(p.m)}};
}

PartMap partmap_from_json(const json& j) {
  PartMap p;
  p.name = j.value("name", "");
  p.domain = space_from_json(j.at("domain"));
  p.codomain = space_from_json(j.at("codomain"));
  p.m = matq_from_json(j.at("matrix"));
  if (p.m.rows != p.codomain.dim || p.m.cols != p.domain.dim)
    throw std::invalid_argument("part map matrix shape mismatch");
  return p;
}

json operator_to_json(const HomOperator& b) {
  json coeffs = json::array();
  for (const auto& [alpha, m] : b.coeff) {  // map order: lexicographic in alpha
    json a = json::array();
    for (auto e : alpha) a.push_back(e);
    coeffs.push_back(json{{"alpha", std::move(a)}, {"matrix", matq_to_json(m)}});
  }
  return json{{"kind", "operator"},
              {"name", b.name},
              {"order", b.order},
              {"dim_n", b.dim_n},
              {"domain", space_to_json(b.domain)},
              {"codomain", space_to_json(b.codomain)},
              {"coefficients", std::move(coeffs)}};
}

HomOperator operator_from_json(const json& j) {
  HomOperator b;
  b.name = j.value("name", "");
  b.order = j.at("order").get<int>();
  b.dim_n = j.at("dim_n").get<int>();
  b.domain = space_from_json(j.at("domain"));
  b.codomain = space_from_json(j.at("codomain"));
  if (b.order < 1) throw std::invalid_argument("operator order must be >= 1");
  if (b.dim_n < 1) throw std::invalid_argument("base dimension must be >= 1");
  for (const auto& c : j.at("coefficients")) {
    MultiIdx alpha;
    for (const auto& e : c.at("alpha")) alpha.push_back(e.get<std::uint32_t>());
    if (static_cast<int>(alpha.size()) != b.dim_n)
      throw std::invalid_argument("multi-index arity mismatch");
    int deg = 0;
    for (auto e : alpha) deg += static_cast<int>(e);
    if (deg != b.order)
      throw std::invalid_argument("multi-index degree must equal operator order");
    MatQ m = matq_from_json(c.at("matrix"));
    if (m.rows != b.codomain.dim || m.cols != b.domain.dim)
      throw std::invalid_argument("coefficient matrix shape mismatch");
    if (!m.is_zero()) {
      if (!b.coeff.emplace(std::move(alpha), std::move(m)).second)
        throw std::invalid_argument("duplicate multi-index in coefficients");
    }
  }
  return b;
}

}  // namespace kms
