#include <catch2/catch_amalgamated.hpp>
#include <waylab/models.hpp>

using namespace waylab;

namespace {
Mat sx_half() {
  Mat m(2, 2);
  m << 0.0, 0.5, 0.5, 0.0;
  return m;
}
}  // namespace

TEST_CASE("spectral measure of a qubit observable") {
  DiscretePOVM p = spectral_measure(sx_half());
  REQUIRE(p.outcomes.size() == 2);
  CHECK(p.outcomes[0].label == Catch::Approx(-0.5));
  CHECK(p.outcomes[1].label == Catch::Approx(0.5));
  Mat sum = p.outcomes[0].effect + p.outcomes[1].effect;
  CHECK((sum - identity(2)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(is_projection(p.outcomes[0].effect));
  CHECK(p.find(0.5) != nullptr);
  CHECK(p.find(0.25) == nullptr);
}

TEST_CASE("affine outcome map inverts exactly") {
  AffineMap f{0.5, -1.0};
  CHECK(f(3.0) == Catch::Approx(0.5));
  CHECK(f.inverse(f(3.0)) == Catch::Approx(3.0));
}

TEST_CASE("scheme validation rejects malformed data") {
  MeasurementScheme s = ohira_pearle().scheme;
  CHECK_NOTHROW(s.validate());
  MeasurementScheme bad = s;
  bad.phi *= 2.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = s;
  bad.f.a = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = s;
  bad.system_dim = 3;  // U no longer matches
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("induced POVM sums to the identity and matches exact schemes") {
  for (const std::string& name :
       {std::string("wigner-ideal"), std::string("ohira-pearle"),
        std::string("swap")}) {
    ModelBundle b = make_model(name);
    DiscretePOVM p = induced_povm(b.scheme);
    Mat sum = Mat::Zero(b.scheme.system_dim, b.scheme.system_dim);
    for (const auto& o : p.outcomes) {
      CHECK(is_effect(o.effect, 1e-9));
      sum += o.effect;
    }
    CHECK((sum - identity(b.scheme.system_dim)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(accuracy_error(b.scheme, b.target) < 1e-10);
  }
}

TEST_CASE("outcome state probabilities form a distribution") {
  ModelBundle b = ohira_pearle();
  Rng rng(21);
  Vec psi = random_state(rng, 2);
  auto states = outcome_states(b.scheme, psi);
  double total = 0.0;
  for (const auto& st : states) {
    CHECK(st.probability >= -1e-12);
    CHECK(std::abs(st.rho.trace().real() - st.probability) < 1e-12);
    total += st.probability;
  }
  CHECK(total == Catch::Approx(1.0).margin(1e-10));
}

TEST_CASE("defect functionals on reference schemes") {
  ModelBundle ideal = wigner_ideal();
  CHECK(conservation_defect(ideal.scheme, ideal.conserved) > 0.1);
  CHECK(accuracy_error(ideal.scheme, ideal.target) < 1e-10);
  CHECK(repeatability_defect(ideal.scheme, ideal.target) < 1e-10);
  CHECK(yanase_defect(ideal.scheme, ideal.conserved) < 1e-10);

  ModelBundle op = ohira_pearle();
  CHECK(conservation_defect(op.scheme, op.conserved) < 1e-10);
  // the pointer is maximally incompatible with the apparatus conserved part
  CHECK(repeatability_defect(op.scheme, op.target) ==
        Catch::Approx(0.5).margin(1e-10));
  CHECK(yanase_defect(op.scheme, op.conserved) > 0.1);
}

TEST_CASE("scheme serialization round trip") {
  ModelBundle b = wigner_lastpage(1);
  nlohmann::ordered_json j = scheme_to_json(b.scheme);
  // stable key set, in order
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  REQUIRE(keys == std::vector<std::string>{"system_dim", "apparatus_dim", "U",
                                           "phi", "Z", "f"});
  CHECK(j["f"]["a"] == 0.5);

  MeasurementScheme back = scheme_from_json(j);
  CHECK(back.system_dim == b.scheme.system_dim);
  CHECK(back.apparatus_dim == b.scheme.apparatus_dim);
  CHECK((back.U - b.scheme.U).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((back.phi - b.scheme.phi).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((back.Z - b.scheme.Z).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(back.f.b == b.scheme.f.b);
  // serialization is byte-stable
  CHECK(scheme_to_json(back).dump() == j.dump());
}

TEST_CASE("serialization rejects corrupted documents") {
  nlohmann::ordered_json j = scheme_to_json(ohira_pearle().scheme);
  nlohmann::ordered_json bad = j;
  bad["U"].erase(0);  // wrong element count
  CHECK_THROWS_AS(scheme_from_json(bad), std::invalid_argument);
  bad = j;
  bad["phi"][0][0] = 100.0;  // not normalized
  CHECK_THROWS_AS(scheme_from_json(bad), std::invalid_argument);
}

TEST_CASE("repeatability sample is seeded and starts with eigenstates") {
  ModelBundle b = ohira_pearle();
  auto s1 = repeatability_sample(b.scheme, b.target, 10);
  auto s2 = repeatability_sample(b.scheme, b.target, 10);
  REQUIRE(s1.size() == 12);  // 2 eigenstates + 10 random
  for (std::size_t i = 0; i < s1.size(); ++i)
    CHECK((s1[i] - s2[i]).norm() == 0.0);
  // leading entries are eigenstates of the reconstructed observable
  Mat m = b.M;
  for (int i = 0; i < 2; ++i) {
    Vec v = s1[i];
    Vec mv = m * v;
    cx lam = v.dot(mv);
    CHECK((mv - lam * v).norm() < 1e-12);
  }
}
