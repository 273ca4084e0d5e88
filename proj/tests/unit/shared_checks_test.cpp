// Runs the shared spec-example matrix and the property suite under doctest so
// failures show up item by item in the unit run as well.
#include <doctest.h>

#include "support/properties.hpp"
#include "support/spec_examples.hpp"

TEST_SUITE("examples") {

TEST_CASE("worked per-operation examples") {
    for (const auto& check : spec_examples::run_all()) {
        INFO(check.name, " ", check.detail);
        CHECK(check.pass);
    }
}

}  // TEST_SUITE

TEST_SUITE("properties") {

TEST_CASE("invariant property checks") {
    for (const auto& check : spec_properties::run_all()) {
        INFO(check.name, " ", check.detail);
        CHECK(check.pass);
    }
}

}  // TEST_SUITE
