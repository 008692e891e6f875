#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kms/operator_model.hpp"

using namespace kms;

namespace {

// Index of entry (i,j) in the row-major vectorization of an n x n matrix.
int vec_idx(int i, int j, int n) { return i * n + j; }

MatQ anti_matrix(const VecQ& z) {
  MatQ a(3, 3);
  a.at(0, 1) = -z[2];
  a.at(0, 2) = z[1];
  a.at(1, 0) = z[2];
  a.at(1, 2) = -z[0];
  a.at(2, 0) = -z[1];
  a.at(2, 1) = z[0];
  return a;
}

// Apply a part map or symbol (matrix on vectorized 3x3 fields) to a matrix.
MatQ apply_vectorized(const MatQ& sym, const MatQ& p) {
  int n = p.rows;
  VecQ v(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v[vec_idx(i, j, n)] = p.at(i, j);
  VecQ w = mat_vec(sym, v);
  MatQ out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = w[vec_idx(i, j, n)];
  return out;
}

}  // namespace

TEST_CASE("multi index enumeration") {
  auto m1 = multi_indices(3, 1);
  REQUIRE(m1.size() == 3);
  CHECK(m1[0] == MultiIdx{0, 0, 1});
  CHECK(m1[2] == MultiIdx{1, 0, 0});
  auto m2 = multi_indices(2, 2);
  REQUIRE(m2.size() == 3);
  CHECK(m2[0] == MultiIdx{0, 2});
  CHECK(m2[1] == MultiIdx{1, 1});
  CHECK(m2[2] == MultiIdx{2, 0});
  CHECK(multi_indices(3, 2).size() == 6);
}

TEST_CASE("part map catalog") {
  int n = 3;
  MatQ p(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) p.at(i, j) = 3 * i + j + 1;

  auto s = part_map("sym", n);
  MatQ symp = apply_vectorized(s.m, p);
  CHECK(symp == mat_scale(Rational(1, 2), mat_add(p, p.transpose())));

  auto sk = part_map("skew", n);
  MatQ skewp = apply_vectorized(sk.m, p);
  CHECK(mat_add(symp, skewp) == p);

  auto dv = part_map("dev", n);
  MatQ devp = apply_vectorized(dv.m, p);
  Rational tr = p.at(0, 0) + p.at(1, 1) + p.at(2, 2);
  CHECK(devp == mat_sub(p, mat_scale(tr / 3, MatQ::identity(3))));

  // tr has scalar codomain: a 1 x 9 row extracting the trace.
  auto t = part_map("tr", n);
  CHECK(t.codomain.dim == 1);
  CHECK(mat_vec(t.m, VecQ{1, 0, 0, 0, 1, 0, 0, 0, 1}) == VecQ{Rational(3)});

  // skewtr = skew part plus trace times identity.
  auto st = part_map("skewtr", n);
  MatQ stp = apply_vectorized(st.m, p);
  CHECK(stp == mat_add(skewp, mat_scale(tr, MatQ::identity(3))));

  // devsym = dev of sym; idempotent.
  auto ds = part_map("devsym", n);
  CHECK(mat_mul(ds.m, ds.m) == ds.m);
  CHECK(ds.m == mat_mul(dv.m, s.m));

  CHECK(part_map("zero", n).m.is_zero());
  CHECK(apply_vectorized(part_map("transpose", n).m, p) == p.transpose());
  CHECK_THROWS(part_map("nope", n));

  // Kernel dimensions on 3x3: sym kills skew (3), dev kills multiples of the
  // identity (1), tr kills trace-free (8).
  CHECK(kernel_basis(s.m).size() == 3);
  CHECK(kernel_basis(dv.m).size() == 1);
  CHECK(kernel_basis(t.m).size() == 8);
  CHECK(kernel_basis(ds.m).size() == 4);
  CHECK(kernel_basis(st.m).size() == 5);
}

TEST_CASE("curl symbol") {
  auto curl = curl_op(3);
  CHECK(curl.order == 1);
  CHECK(curl.domain.dim == 9);
  CHECK(curl.codomain.dim == 9);

  VecQ xi{Rational(2), Rational(-1), Rational(3)};
  MatQ sym = symbol_eval(curl, xi);

  MatQ p(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) p.at(i, j) = i - 2 * j;
  // Row-wise curl symbol: P Anti(xi).
  CHECK(apply_vectorized(sym, p) == mat_mul(p, anti_matrix(xi)));

  // Anti(xi) itself has rank 2 for xi != 0, so the curl symbol has a kernel.
  CHECK(rank(anti_matrix(VecQ{Rational(0), Rational(0), Rational(1)})) == 2);

  // n=2 curl maps 2x2 fields to vectors: P * (-xi_1, xi_0)^T.
  auto curl2 = curl_op(2);
  CHECK(curl2.codomain.dim == 2);
  MatQ s2 = symbol_eval(curl2, VecQ{Rational(1), Rational(2)});
  CHECK(mat_vec(s2, VecQ{1, 0, 0, 1}) == VecQ{Rational(-2), Rational(1)});
}

TEST_CASE("div symbol") {
  auto dv = div_op(3);
  VecQ xi{Rational(1), Rational(2), Rational(5)};
  MatQ sym = symbol_eval(dv, xi);
  MatQ p(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) p.at(i, j) = (i == j) ? 1 : i + j;
  VecQ v(9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) v[vec_idx(i, j, 3)] = p.at(i, j);
  CHECK(mat_vec(sym, v) == mat_vec(p, xi));
}

TEST_CASE("inc symbol") {
  auto inc = inc_op();
  CHECK(inc.order == 2);
  VecQ xi{Rational(1), Rational(-2), Rational(2)};
  MatQ sym = symbol_eval(inc, xi);
  // inc applied to the identity: Anti(xi) Anti(xi)^T = |xi|^2 I - xi xi^T.
  MatQ got = apply_vectorized(sym, MatQ::identity(3));
  Rational n2 = dot(xi, xi);
  MatQ expect(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      expect.at(i, j) = (i == j ? n2 : Rational(0)) - xi[i] * xi[j];
  CHECK(got == expect);
  // Its trace is 2 |xi|^2.
  CHECK(got.at(0, 0) + got.at(1, 1) + got.at(2, 2) == 2 * n2);
  // On a skew input Anti(z) the symbol collapses to a multiple of Anti(xi):
  // Anti(xi) Anti(z) Anti(xi)^T = <xi, z> Anti(xi).
  VecQ z{Rational(1), Rational(1), Rational(-4)};
  MatQ a = anti_matrix(z);
  MatQ skew_expect = anti_matrix(xi);
  Rational zdot = dot(xi, z);
  for (auto& entry : skew_expect.a) entry *= zdot;
  CHECK(apply_vectorized(sym, a) == skew_expect);
}

TEST_CASE("symbol matrix matches pointwise evaluation") {
  auto curl = curl_op(3);
  SymbolMatrix sm = symbol_matrix(curl);
  VecQ xi{Rational(3), Rational(1, 2), Rational(-1)};
  MatQ direct = symbol_eval(curl, xi);
  for (int i = 0; i < sm.rows; ++i)
    for (int j = 0; j < sm.cols; ++j) {
      CHECK(sm.at(i, j).eval(xi) == direct.at(i, j));
      if (!sm.at(i, j).is_zero()) {
        CHECK(sm.at(i, j).is_homogeneous());
        CHECK(sm.at(i, j).total_degree() == curl.order);
      }
    }
}

TEST_CASE("composition and restriction") {
  int n = 3;
  auto curl = curl_op(n);
  auto s = part_map("sym", n);

  auto post = postcompose(s, curl);
  auto pre = precompose(curl, s);
  VecQ xi{Rational(1), Rational(2), Rational(-1)};
  CHECK(symbol_eval(post, xi) == mat_mul(s.m, symbol_eval(curl, xi)));
  CHECK(symbol_eval(pre, xi) == mat_mul(symbol_eval(curl, xi), s.m));

  // curl after curl: order 2, symbol is the product.
  auto cc = compose_ops(curl, curl);
  CHECK(cc.order == 2);
  CHECK(symbol_eval(cc, xi) ==
        mat_mul(symbol_eval(curl, xi), symbol_eval(curl, xi)));

  auto sum = add_ops(curl, scale_op(Rational(-1), curl));
  CHECK(symbol_eval(sum, xi).is_zero());

  // Restricting to ker(sym) = skew matrices: 3-dimensional domain.
  auto ker = kernel_basis(s.m);
  auto restr = restrict_op(curl, ker, "skew fields");
  CHECK(restr.domain.dim == 3);
  MatQ full = symbol_eval(curl, xi);
  MatQ small = symbol_eval(restr, xi);
  for (std::size_t c = 0; c < ker.size(); ++c) {
    VecQ big = mat_vec(full, ker[c]);
    VecQ e(ker.size());
    e[c] = 1;
    CHECK(mat_vec(small, e) == big);
  }
}

TEST_CASE("gradient operator") {
  // v -> v otimes xi on R^2: 2x2-matrix codomain, kernel trivial for xi != 0.
  auto grad = gradient_operator(part_map("id", 2), 2);
  CHECK(grad.order == 1);
  CHECK(grad.domain.dim == 2);
  CHECK(grad.codomain.dim == 4);
  VecQ xi{Rational(3), Rational(5)};
  MatQ sym = symbol_eval(grad, xi);
  VecQ v{Rational(1), Rational(2)};
  CHECK(mat_vec(sym, v) == VecQ{Rational(3), Rational(5), Rational(6), Rational(10)});
}

TEST_CASE("scalar codomain embedding") {
  // tr[curl] has scalar codomain; embedding identifies it with (tr curl) * I.
  auto tcurl = postcompose(part_map("tr", 3), curl_op(3));
  CHECK(tcurl.codomain.dim == 1);
  auto emb = embed_scalar_codomain(tcurl, 3);
  CHECK(emb.codomain.dim == 9);
  VecQ xi{Rational(1), Rational(4), Rational(2)};
  MatQ se = symbol_eval(emb, xi);
  MatQ st = symbol_eval(tcurl, xi);
  VecQ p(9);
  for (int i = 0; i < 9; ++i) p[i] = i + 1;
  VecQ scalar = mat_vec(st, p);
  VecQ big = mat_vec(se, p);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(big[vec_idx(i, j, 3)] == (i == j ? scalar[0] : Rational(0)));
}

TEST_CASE("json round trips byte for byte") {
  auto curl = curl_op(3);
  auto j = operator_to_json(curl);
  auto back = operator_from_json(j);
  CHECK(operator_to_json(back).dump() == j.dump());
  CHECK(symbol_eval(back, VecQ{Rational(1), Rational(1), Rational(1)}) ==
        symbol_eval(curl, VecQ{Rational(1), Rational(1), Rational(1)}));

  auto s = part_map("devsym", 3);
  auto js = partmap_to_json(s);
  auto sback = partmap_from_json(js);
  CHECK(partmap_to_json(sback).dump() == js.dump());
  CHECK(sback.m == s.m);

  MatQ m(2, 3);
  m.at(0, 0) = Rational(1, 2);
  m.at(1, 2) = Rational(-7, 3);
  CHECK(matq_from_json(matq_to_json(m)) == m);

  Poly p = Poly::var(2, 0, 2) - Poly::var(2, 1);
  CHECK(poly_from_json(poly_to_json(p)) == p);

  CHECK_THROWS(operator_from_json(nlohmann::json{{"order", 1}}));
}
