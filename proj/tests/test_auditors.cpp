#include <doctest.h>

#include <cmath>
#include <vector>

#include "hugeobj/auditors.hpp"
#include "hugeobj/generators.hpp"

using namespace hugeobj;

namespace {

// Exact signed advantage E[(f*(x) - p(x)) 1_S(x)] over an enumerable domain.
double exact_sample_advantage(const std::vector<std::uint8_t>& f,
                              const CappedPredictor& p, const SetSpec& s) {
  double v = 0.0;
  for (Element x = 0; x < f.size(); ++x)
    if (s.contains(x)) v += f[x] - p.eval(x);
  return v / static_cast<double>(f.size());
}

// Exact support-law advantage Pr_supp[S] - Pr_p[S].
double exact_support_advantage(const std::vector<std::uint8_t>& f,
                               const CappedPredictor& p, const SetSpec& s) {
  double supp = 0, supp_in = 0, mass = 0, mass_in = 0;
  for (Element x = 0; x < f.size(); ++x) {
    supp += f[x];
    mass += p.eval(x);
    if (s.contains(x)) {
      supp_in += f[x];
      mass_in += p.eval(x);
    }
  }
  return supp_in / supp - mass_in / mass;
}

}  // namespace

TEST_CASE("an exact predictor passes the sample audit") {
  Rng rng(1);
  GeneratedFunction f = gen_random_support_k(256, 64, rng);
  CappedPredictor p;
  p.domain = f.spec.domain;
  p.base = 0.0;
  auto tbl = f.table;
  p.append({[tbl](Element x) { return static_cast<double>((*tbl)[x]); }, 1.0, "truth"});

  DistinguisherClass cls;
  OracleSeed cseed("aud");
  for (int i = 0; i < 8; ++i)
    cls.push_back(Distinguisher::for_set(
        SetSpec::random_density("S" + std::to_string(i), f.spec.domain, 0.5, cseed)));
  AuditorParams ap{0.3, 0.1, 0.02, std::nullopt};
  auto finding = audit_sample_access(cls, function_sample_view(f), p, ap, rng);
  CHECK_FALSE(finding.has_value());
}

TEST_CASE("a planted sample-access violator is found with its sign") {
  Rng rng(2);
  SetSpec s1 = SetSpec::interval("S1", 0, 128);  // |S1|/N = 1/2
  GeneratedFunction f = gen_planted_union(DomainSpec::indexed(256), {s1});
  CappedPredictor p = CappedPredictor::constant(f.spec.domain, 0.0);
  DistinguisherClass cls{Distinguisher::for_set(s1)};
  AuditorParams ap{0.3, 0.1, 0.02, std::nullopt};
  auto finding = audit_sample_access(cls, function_sample_view(f), p, ap, rng);
  REQUIRE(finding.has_value());
  CHECK(finding->sign == +1);
  CHECK(finding->estimated_advantage > ap.threshold());
  CHECK(exact_sample_advantage(*f.table, p, finding->witness.set) ==
        doctest::Approx(0.5));
}

TEST_CASE("a multiaccurate predictor yields no finding") {
  Rng rng(3);
  GeneratedFunction f = gen_random_support_k(256, 128, rng);
  // p within 0.01 of f* everywhere, so every exact set advantage is < 0.01.
  CappedPredictor p;
  p.domain = f.spec.domain;
  p.base = 0.0;
  auto tbl = f.table;
  p.append({[tbl](Element x) { return 0.99 * (*tbl)[x] + 0.005; }, 1.0, "near"});

  DistinguisherClass cls;
  OracleSeed cseed("aud2");
  for (int i = 0; i < 16; ++i)
    cls.push_back(Distinguisher::for_set(
        SetSpec::random_density("S" + std::to_string(i), f.spec.domain, 0.5, cseed)));
  for (const auto& d : cls)
    CHECK(std::abs(exact_sample_advantage(*f.table, p, d.set)) < 0.01);
  AuditorParams ap{0.1, 0.05, 0.02, std::nullopt};
  auto finding = audit_sample_access(cls, function_sample_view(f), p, ap, rng);
  CHECK_FALSE(finding.has_value());
}

TEST_CASE("support audit: proportional predictor passes") {
  Rng rng(4);
  GeneratedFunction f = gen_random_support_k(256, 64, rng);
  CappedPredictor p;
  p.domain = f.spec.domain;
  p.base = 0.0;
  auto tbl = f.table;
  p.append({[tbl](Element x) { return 0.5 * (*tbl)[x]; }, 1.0, "prop"});
  DistinguisherClass cls;
  OracleSeed cseed("sup");
  for (int i = 0; i < 8; ++i)
    cls.push_back(Distinguisher::for_set(
        SetSpec::random_density("S" + std::to_string(i), f.spec.domain, 0.5, cseed)));
  AuditorParams ap{0.3, 0.1, 0.02, std::nullopt};
  auto finding =
      audit_support_access(cls, function_support_view(f), p, ap, rng, 4000);
  CHECK_FALSE(finding.has_value());
}

TEST_CASE("support audit flags concentration and starvation with signs") {
  Rng rng(5);
  SetSpec s1 = SetSpec::interval("S1", 0, 64);  // |S1|/N = 1/4
  GeneratedFunction f = gen_planted_union(DomainSpec::indexed(256), {s1});
  CappedPredictor uniform = CappedPredictor::constant(f.spec.domain, 0.5);
  AuditorParams ap{0.3, 0.1, 0.02, std::nullopt};

  SUBCASE("support concentrated in S1, uniform model") {
    DistinguisherClass cls{Distinguisher::for_set(s1)};
    auto finding =
        audit_support_access(cls, function_support_view(f), uniform, ap, rng, 400);
    REQUIRE(finding.has_value());
    CHECK(finding->sign == +1);  // support prob 1 vs model prob 1/4
    CHECK(exact_support_advantage(*f.table, uniform, s1) == doctest::Approx(0.75));
  }
  SUBCASE("set disjoint from the support with model mass") {
    SetSpec far = SetSpec::interval("far", 64, 102);  // ~0.4 of uniform mass
    DistinguisherClass cls{Distinguisher::for_set(far)};
    auto finding =
        audit_support_access(cls, function_support_view(f), uniform, ap, rng, 400);
    REQUIRE(finding.has_value());
    CHECK(finding->sign == -1);
  }
}

TEST_CASE("audit soundness and completeness over repeated trials") {
  // Planted violator at level eps; count found / sign-correct / >= gamma.
  const int trials = 200;
  const double delta = 0.02;
  AuditorParams ap{0.3, 0.1, delta, std::nullopt};
  Rng rng(6);
  int found = 0, exact_ok = 0;
  SetSpec splant = SetSpec::interval("S*", 0, 128);
  GeneratedFunction f = gen_planted_union(DomainSpec::indexed(256), {splant});
  CappedPredictor p = CappedPredictor::constant(f.spec.domain, 0.25);
  // true advantage on S*: (1 - 0.25) * 1/2 = 0.375 >= eps
  for (int t = 0; t < trials; ++t) {
    DistinguisherClass cls{Distinguisher::for_set(splant)};
    OracleSeed cseed = OracleSeed::random(rng);
    for (int i = 0; i < 15; ++i)
      cls.push_back(Distinguisher::for_set(
          SetSpec::random_density("R" + std::to_string(i), f.spec.domain, 0.5, cseed)));
    auto finding = audit_sample_access(cls, function_sample_view(f), p, ap, rng);
    if (!finding) continue;
    ++found;
    double exact = exact_sample_advantage(*f.table, p, finding->witness.set);
    if (finding->sign * exact >= ap.gamma) ++exact_ok;
  }
  double slack = 3.0 * std::sqrt(trials * delta);
  CHECK(found >= (1.0 - delta) * trials - slack);
  CHECK(exact_ok >= (1.0 - delta) * trials - slack);
}

TEST_CASE("sq oracle: identical phis reduce to the plain mean") {
  Rng rng(7);
  GeneratedFunction f = gen_random_support_k(256, 64, rng);
  auto phi = [](Element x) { return (x % 7) / 7.0; };
  double exact = 0.0;
  for (Element x = 0; x < 256; ++x) exact += phi(x);
  exact /= 256.0;
  double v = sq_support_oracle(phi, phi, function_support_view(f), f.spec.domain, 64,
                               0.05, rng);
  CHECK(std::abs(v - exact) <= 0.05);
}

TEST_CASE("sq oracle recovers the support mass for phi(x,y) = y") {
  Rng rng(8);
  GeneratedFunction f = gen_random_support_k(256, 64, rng);
  auto one = [](Element) { return 1.0; };
  auto zero = [](Element) { return 0.0; };
  double v = sq_support_oracle(one, zero, function_support_view(f), f.spec.domain, 64,
                               0.05, rng);
  CHECK(std::abs(v - 64.0 / 256.0) <= 0.05);
}

TEST_CASE("sq oracle matches an exact intersection count") {
  Rng rng(9);
  GeneratedFunction f = gen_random_support_k(256, 64, rng);
  // phi = 1(x in S, y = 1) with |S cap supp| counted exactly
  SetSpec s = SetSpec::interval("S", 0, 100);
  std::uint64_t inter = 0;
  for (Element x = 0; x < 256; ++x)
    if (s.contains(x) && (*f.table)[x]) ++inter;
  auto phi1 = [s](Element x) { return s.contains(x) ? 1.0 : 0.0; };
  auto phi2 = [](Element) { return 0.0; };
  double v = sq_support_oracle(phi1, phi2, function_support_view(f), f.spec.domain, 64,
                               0.05, rng);
  CHECK(std::abs(v - inter / 256.0) <= 0.05);
}

TEST_CASE("sq oracle rejects m beyond the domain") {
  Rng rng(10);
  GeneratedFunction f = gen_random_support_k(16, 4, rng);
  auto one = [](Element) { return 1.0; };
  CHECK_THROWS_AS(sq_support_oracle(one, one, function_support_view(f), f.spec.domain,
                                    17, 0.1, rng),
                  std::invalid_argument);
}
