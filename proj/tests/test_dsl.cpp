#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kms/dsl.hpp"

#include <string>

using namespace kms;

namespace {

bool same_symbol(const HomOperator& x, const HomOperator& y) {
  return x.order == y.order && x.dim_n == y.dim_n &&
         x.domain.dim == y.domain.dim && x.codomain.dim == y.codomain.dim &&
         x.coeff == y.coeff;
}

std::string error_of(const std::string& text, int n) {
  try {
    parse_expression(text, n);
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("catalog names parse") {
  for (const auto& name : part_map_names()) {
    auto p = parse_partmap(name, 3);
    CHECK(p.m == part_map(name, 3).m);
  }
  CHECK(same_symbol(parse_operator("curl", 3), curl_op(3)));
  CHECK(same_symbol(parse_operator("div", 3), div_op(3)));
  CHECK(same_symbol(parse_operator("inc", 3), inc_op()));
  CHECK(same_symbol(parse_operator("grad", 2),
                    gradient_operator(part_map("id", 2), 2)));
}

TEST_CASE("case and whitespace insensitive") {
  CHECK(parse_partmap("  DevSym ", 3).m == part_map("devsym", 3).m);
  CHECK(same_symbol(parse_operator("Sym( Curl )", 3),
                    postcompose(part_map("sym", 3), curl_op(3))));
}

TEST_CASE("composition forms") {
  // part(part) multiplies matrices.
  CHECK(parse_partmap("dev(sym)", 3).m == part_map("devsym", 3).m);
  // part(op) postcomposes, op(part) precomposes.
  CHECK(same_symbol(parse_operator("sym(curl)", 3),
                    postcompose(part_map("sym", 3), curl_op(3))));
  CHECK(same_symbol(parse_operator("curl(sym)", 3),
                    precompose(curl_op(3), part_map("sym", 3))));
  // op(op) composes and adds orders.
  auto cc = parse_operator("curl(curl)", 3);
  CHECK(cc.order == 2);
  CHECK(same_symbol(cc, compose_ops(curl_op(3), curl_op(3))));
  // Parenthesized grouping without application.
  CHECK(same_symbol(parse_operator("(curl)", 3), curl_op(3)));
  // devsym(grad) equals the gradient built on the devsym part directly.
  CHECK(same_symbol(parse_operator("devsym(grad)", 2),
                    gradient_operator(part_map("devsym", 2), 2)));
}

TEST_CASE("sums and rational coefficients") {
  // sym + skew is the identity on matrix fields.
  CHECK(parse_partmap("sym+skew", 3).m == part_map("id", 3).m);
  CHECK(parse_partmap("1/2*id + 1/2*transpose", 3).m == part_map("sym", 3).m);
  CHECK(same_symbol(parse_operator("1/2*curl + 1/2*curl", 3), curl_op(3)));
  auto doubled = parse_operator("2*curl", 3);
  CHECK(doubled.coeff == scale_op(Rational(2), curl_op(3)).coeff);
  CHECK(parse_partmap("-1*skew + sym", 3).m ==
        mat_sub(part_map("sym", 3).m, part_map("skew", 3).m));
}

TEST_CASE("scalar embedding makes the counterexample operator") {
  // tr has a scalar codomain; adding it to skew(curl) promotes the trace to
  // a multiple of the identity, matching skewtr(curl) exactly.
  auto sum = parse_operator("skew(curl)+tr(curl)", 3);
  auto direct = parse_operator("skewtr(curl)", 3);
  CHECK(same_symbol(sum, direct));

  // Standalone scalar-codomain operator embeds at top level...
  auto tcurl = parse_operator("tr(curl)", 3);
  CHECK(tcurl.codomain.dim == 9);
  // ...but not when embedding is disabled.
  auto raw = parse_operator("tr(curl)", 3, false);
  CHECK(raw.codomain.dim == 1);
  // Part maps never top-embed.
  CHECK(parse_partmap("tr", 3).codomain.dim == 1);
}

TEST_CASE("kind mismatches are reported") {
  CHECK_THROWS_WITH(parse_partmap("curl", 3),
                    "'curl' is an operator, not a part map");
  CHECK_THROWS_WITH(parse_operator("sym", 3),
                    "'sym' is a part map, not an operator");
}

TEST_CASE("errors carry positions") {
  CHECK(error_of("sym(curl", 3).find("expected ')'") != std::string::npos);
  CHECK(error_of("bogus", 3).find("bogus") != std::string::npos);
  CHECK(error_of("sym(curl))", 3).find("trailing") != std::string::npos);
  CHECK(error_of("1/*curl", 3).find("at 2") != std::string::npos);
  CHECK(error_of("sym + ", 3) != "");
  CHECK(error_of("3curl", 3).find("'*'") != std::string::npos);
  // Dimension gating.
  CHECK_THROWS(parse_operator("inc", 2));
  CHECK_THROWS(parse_operator("curl", 4));
  CHECK_THROWS(parse_expression("sym", 1));
  // Shape mismatches inside expressions.
  CHECK(error_of("sym(div)", 3).find("codomain") != std::string::npos);
  CHECK(error_of("curl+div", 3) != "");
}

TEST_CASE("zero map") {
  auto z = parse_partmap("zero", 3);
  CHECK(z.m.is_zero());
  CHECK(z.codomain.dim == 1);
  auto zs = zero_map(vector_space(2));
  CHECK(zs.domain.dim == 2);
  CHECK(zs.m.is_zero());
}
