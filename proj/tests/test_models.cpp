#include <catch2/catch_amalgamated.hpp>
#include <waylab/models.hpp>
#include <waylab/report.hpp>

using namespace waylab;

TEST_CASE("ideal model: exact measurement that breaks conservation") {
  ModelBundle b = wigner_ideal();
  CHECK_NOTHROW(b.scheme.validate());
  // the two definite inputs differ by one unit of the conserved quantity
  // while the outputs agree
  Mat l = b.conserved.total(2, 3);
  Vec up = Vec::Zero(2), dn = Vec::Zero(2);
  up(0) = 1.0;
  dn(1) = 1.0;
  auto ev = [&](const Vec& v) { return (v.adjoint() * l * v)(0).real(); };
  Vec i1 = tensor(up, b.scheme.phi), i2 = tensor(dn, b.scheme.phi);
  CHECK(ev(i1) - ev(i2) == Catch::Approx(1.0).margin(1e-12));
  CHECK(std::abs(ev(Vec(b.scheme.U * i1)) - ev(Vec(b.scheme.U * i2))) < 1e-10);
  WayReport w = way_verdict(b.scheme, b.M, b.conserved, b.target);
  CHECK(matches(b.expected, w));
}

TEST_CASE("rotation-invariant model evolution oracle") {
  ModelBundle b = ohira_pearle();
  const MeasurementScheme& s = b.scheme;
  Vec up = Vec::Zero(2), dn = Vec::Zero(2);
  up(0) = 1.0;
  dn(1) = 1.0;
  const double r2 = std::sqrt(2.0);
  // (up + dn) (x) up -> (-up) (x) (up + dn), and likewise with the minus sign
  CHECK(phase_insensitive_distance(
            s.U * tensor(Vec((up + dn) / r2), up),
            tensor(Vec(-up), Vec((up + dn) / r2))) < 1e-10);
  CHECK(phase_insensitive_distance(
            s.U * tensor(Vec((up - dn) / r2), up),
            tensor(Vec(-up), Vec((up - dn) / r2))) < 1e-10);
  // the coupling migrates the x-spin onto the apparatus exactly
  Mat sy(2, 2);
  sy << 0.0, cx(0.0, -0.5), cx(0.0, 0.5), 0.0;
  CHECK(op_norm(heisenberg(s.U, tensor(identity(2), sy)) -
                tensor(sy, identity(2))) < 1e-12);
  WayReport w = way_verdict(s, b.M, b.conserved, b.target);
  CHECK(matches(b.expected, w));
}

TEST_CASE("product-form schemes are accurate but not repeatable") {
  for (int sc : {1, 2}) {
    ModelBundle b = wigner_lastpage(sc);
    CHECK_NOTHROW(b.scheme.validate());
    CHECK(conservation_defect(b.scheme, b.conserved) < 1e-10);
    CHECK(accuracy_error(b.scheme, b.target) < 1e-10);
    CHECK(repeatability_defect(b.scheme, b.target) > 0.1);
    WayReport w = way_verdict(b.scheme, b.M, b.conserved, b.target);
    CHECK(matches(b.expected, w));
  }
  CHECK_THROWS_AS(wigner_lastpage(3), std::invalid_argument);
}

TEST_CASE("swap scheme identities") {
  ModelBundle b = make_model("swap", 3, 2);
  CHECK(noise_operator(b.scheme, b.M).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(conservation_defect(b.scheme, b.conserved) < 1e-12);
  DiscretePOVM p = induced_povm(b.scheme);
  for (const auto& o : p.outcomes) {
    const Mat* t = b.target.find(o.label);
    REQUIRE(t != nullptr);
    CHECK(op_norm(o.effect - *t) < 1e-12);
  }
  Mat bad(2, 3);
  CHECK_THROWS_AS(swap_model(bad, bad), std::invalid_argument);
}

TEST_CASE("approximate model parameter plumbing") {
  CHECK(wigner_apparatus_dim(1) == 6);
  CHECK(wigner_param_count(1) == 40);
  CHECK_THROWS_AS(wigner_approximate(1, std::vector<double>(7, 0.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(optimize_wigner_error(0), std::invalid_argument);
  CHECK_THROWS_AS(optimize_wigner_error(9), std::invalid_argument);
  // all-zero angles give the identity coupling: zero failure weight but the
  // two definite pointer components coincide, so the orthogonality residual
  // <A,B> = 1 makes it maximally infeasible
  std::vector<double> zero(wigner_param_count(1), 0.0);
  CHECK(wigner_structure(1, zero).eta_sq < 1e-12);
  CHECK(wigner_feasibility(1, zero) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("optimized failure weights: frozen values and invariants") {
  // forced values of the doubly degenerate ladder family (hand-derived from
  // the sector sum rules): w = 1/3 at n = 1 and n = 2, w = 1/7 at n = 3
  std::vector<double> eta;
  for (int n = 1; n <= 3; ++n) {
    WignerOptResult r = optimize_wigner_error(n);
    CHECK(wigner_feasibility(n, r.params) <= 1e-9);
    CHECK(r.best_start >= 0);
    eta.push_back(r.eta_sq);
  }
  CHECK(eta[0] == Catch::Approx(1.0 / 3.0).margin(1e-6));
  CHECK(eta[1] == Catch::Approx(1.0 / 3.0).margin(1e-6));
  CHECK(eta[2] == Catch::Approx(1.0 / 7.0).margin(1e-6));
  // monotone nonincreasing in n, and never above 1/(2n-1)
  for (int n = 1; n <= 3; ++n) {
    CHECK(eta[n - 1] <= 1.0 / (2.0 * n - 1.0) + 1e-6);
    if (n > 1) CHECK(eta[n - 1] <= eta[n - 2] + 1e-9);
  }
}

TEST_CASE("optimizer is deterministic") {
  WignerOptResult a = optimize_wigner_error(1);
  WignerOptResult b = optimize_wigner_error(1);
  CHECK(a.eta_sq == b.eta_sq);
  CHECK(a.best_start == b.best_start);
  REQUIRE(a.params.size() == b.params.size());
  for (std::size_t i = 0; i < a.params.size(); ++i)
    CHECK(a.params[i] == b.params[i]);
}

TEST_CASE("optimized bundle has the three-outcome effect structure") {
  WignerOptResult r = optimize_wigner_error(2);
  ModelBundle b = wigner_approximate(2, r.params);
  CHECK_NOTHROW(b.scheme.validate());
  CHECK(conservation_defect(b.scheme, b.conserved) < 1e-12);
  double w = b.eta_sq;
  CHECK(w == Catch::Approx(1.0 / 3.0).margin(1e-6));

  // E(+-1/2) = (1 - w) P[phi_+-], E(0) = w * identity
  DiscretePOVM p = induced_povm(b.scheme);
  Vec up = Vec::Zero(2), dn = Vec::Zero(2);
  up(0) = 1.0;
  dn(1) = 1.0;
  const double r2 = std::sqrt(2.0);
  Vec xp = (up + dn) / r2, xm = (up - dn) / r2;
  const Mat* ep = p.find(0.5);
  const Mat* em = p.find(-0.5);
  const Mat* e0 = p.find(0.0);
  REQUIRE((ep && em && e0));
  CHECK(op_norm(*ep - Mat((1.0 - w) * xp * xp.adjoint())) < 1e-9);
  CHECK(op_norm(*em - Mat((1.0 - w) * xm * xm.adjoint())) < 1e-9);
  CHECK(op_norm(*e0 - Mat(w * identity(2))) < 1e-9);

  WayReport way = way_verdict(b.scheme, b.M, b.conserved, b.target);
  CHECK(matches(b.expected, way));
}

TEST_CASE("model registry") {
  auto names = zoo_names();
  CHECK(names.size() == 6);
  for (const std::string& n : names)
    if (n != "wigner-approx") CHECK(make_model(n).name == n);
  CHECK_THROWS_AS(make_model("no-such-model"), std::invalid_argument);
}

TEST_CASE("bundle serialization carries the expectation block") {
  ModelBundle b = wigner_ideal();
  nlohmann::ordered_json j = bundle_to_json(b);
  CHECK(j["model"] == "wigner-ideal");
  CHECK(j["expected"]["conservation_defect"] == "positive");
  CHECK(j["expected"]["accuracy_error"] == "zero");
  CHECK(j.contains("U"));
  nlohmann::ordered_json rep = model_report(b);
  CHECK(rep["expected_match"].get<bool>());
  CHECK(rep["report"].contains("yanase_defect"));
  CHECK(rep["noise"].contains("ozawa_bound"));
}
