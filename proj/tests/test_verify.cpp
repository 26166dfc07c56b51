#include "doctest.h"
#include "duplexem/verify.hpp"

using namespace duplexem;

TEST_SUITE("verify") {

TEST_CASE("suite is deterministic and only expected failures fail") {
    const auto a = run_verify_suite(42), b = run_verify_suite(42);
    REQUIRE(a.size() == b.size());
    int xfail = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].name == b[i].name);
        CHECK(a[i].value == b[i].value);
        if (a[i].expected_fail) {
            ++xfail;
            CHECK_FALSE(a[i].pass);
        } else {
            INFO(a[i].module << ": " << a[i].name << " = " << a[i].value);
            CHECK(a[i].pass);
        }
    }
    CHECK(xfail == 4);
}

TEST_CASE("other seeds pass too") {
    for (std::uint64_t seed : {1u, 7u, 12345u})
        for (const auto& r : run_verify_suite(seed)) {
            INFO(seed << " " << r.name << " = " << r.value);
            CHECK((r.pass || r.expected_fail));
        }
}

}  // TEST_SUITE
