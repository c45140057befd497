#include <doctest.h>

#include "properties.hpp"

using namespace qtheta::test;

namespace
{

void require(const PropertyResult &r)
{
    INFO(r.name << ": " << r.first_failure);
    CHECK(r.cases >= 1000);
    CHECK(r.failures == 0);
}

} // namespace

TEST_CASE("laurent ring axioms") { require(prop_ring_axioms(1000)); }

TEST_CASE("parse round-trip") { require(prop_parse_round_trip(1000)); }

TEST_CASE("unit inverse is an involution") { require(prop_invert_involution(1000)); }

TEST_CASE("truncation soundness") { require(prop_truncation_soundness(1000)); }

TEST_CASE("inversion round-trip") { require(prop_inversion_round_trip(1000)); }

TEST_CASE("substitution homomorphism") { require(prop_substitution_homomorphism(1000)); }

TEST_CASE("rewrite preserves value") { require(prop_rewrite_preserves_value(1000)); }

TEST_CASE("theta reflection")
{
    PropertyResult r = prop_reflection(60);
    INFO(r.first_failure);
    CHECK(r.ok());
}
