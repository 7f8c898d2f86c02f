#include <doctest.h>

#include <nlohmann/json.hpp>

#include "ovmkit/gallery.hpp"
#include "ovmkit/io.hpp"
#include "support.hpp"

using namespace ovmkit;
using nlohmann::json;
using testing::Rng;

TEST_CASE("operator sequences survive a JSON round trip") {
    const auto seq = bisgaard().sequence;
    const json j = sequence_to_json(seq);
    CHECK(j["field"] == "real");
    const auto back = sequence_from_json(j);
    REQUIRE(back.max_index() == seq.max_index());
    for (int n = 0; n <= seq.max_index(); ++n) {
        CHECK((back.term(n).matrix() - seq.term(n).matrix()).norm() == 0.0);
    }

    Rng rng(163);
    std::vector<HermitianMatrix> complex_terms;
    for (int n = 0; n < 3; ++n) {
        complex_terms.push_back(testing::random_hermitian(rng, 3));
    }
    const OperatorSequence cseq(std::move(complex_terms));
    const json cj = sequence_to_json(cseq);
    CHECK(cj["field"] == "complex");
    const auto cback = sequence_from_json(cj);
    for (int n = 0; n <= cseq.max_index(); ++n) {
        CHECK((cback.term(n).matrix() - cseq.term(n).matrix()).norm() == 0.0);
    }
}

TEST_CASE("schema violations are reported") {
    json j;
    j["schema_version"] = "1";
    j["dim"] = 2;
    j["field"] = "real";
    j["matrices"] = json::array({json::array(
        {json::array({1.0, 0.0}), json::array({0.0, 1.0, 5.0})})});
    CHECK_THROWS_AS(sequence_from_json(j), SchemaError);

    json wrong_version = sequence_to_json(bisgaard().sequence);
    wrong_version["schema_version"] = "999";
    CHECK_THROWS_AS(sequence_from_json(wrong_version), SchemaError);

    json not_hermitian;
    not_hermitian["schema_version"] = "1";
    not_hermitian["dim"] = 2;
    not_hermitian["field"] = "real";
    not_hermitian["matrices"] = json::array({json::array(
        {json::array({0.0, 1.0}), json::array({-1.0, 0.0})})});
    CHECK_THROWS_AS(sequence_from_json(not_hermitian), SchemaError);
}

TEST_CASE("atomic OVMs round trip losslessly") {
    Rng rng(167);
    for (int trial = 0; trial < 20; ++trial) {
        const auto e =
            testing::random_measure(rng, rng.integer(1, 4), rng.integer(1, 4));
        const json j = ovm_to_json(e);
        const auto back = ovm_from_json(j);
        REQUIRE(back.atom_count() == e.atom_count());
        for (int k = 0; k < e.atom_count(); ++k) {
            CHECK(back.atoms()[k] == e.atoms()[k]); // bit-exact
            CHECK((back.weights()[k].matrix() - e.weights()[k].matrix())
                      .norm() == 0.0);
        }
        // a second export is byte-identical
        CHECK(ovm_to_json(back).dump() == j.dump());
    }

    const json zero = ovm_to_json(AtomicOVM::zero_measure(3));
    const auto zback = ovm_from_json(zero);
    CHECK(zback.atom_count() == 0);
    CHECK(zback.dim() == 3);
}

TEST_CASE("weight families round trip and validate") {
    Rng rng(173);
    std::vector<HermitianMatrix> weights;
    for (int k = 0; k < 4; ++k) {
        weights.push_back(testing::random_psd(rng, 2, 0.3));
    }
    const WeightFamily family(std::move(weights));
    const auto back = weights_from_json(weights_to_json(family));
    REQUIRE(back.count() == family.count());
    for (int k = 0; k < family.count(); ++k) {
        CHECK((back.weight(k).matrix() - family.weight(k).matrix()).norm() ==
              0.0);
    }

    json bad = weights_to_json(family);
    bad["matrices"][0][0][0] = -5.0; // breaks positivity
    CHECK_THROWS_AS(weights_from_json(bad), SchemaError);
}

TEST_CASE("verdict serialization carries margins and parts") {
    Verdict v("outer", true);
    v.margin("m", 1.5).note("fine");
    v.part(Verdict("inner", false));
    const json j = verdict_to_json(v);
    CHECK(j["check"] == "outer");
    CHECK(j["pass"] == true);
    CHECK(j["margins"]["m"] == 1.5);
    CHECK(j["parts"][0]["pass"] == false);
}

TEST_CASE("digest is stable") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("ovmkit") != fnv1a_hex("ovmkit2"));
}
