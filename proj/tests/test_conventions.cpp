#include "coindiff/conventions.hpp"
#include "coindiff/graph.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace coindiff;
namespace fs = std::filesystem;

namespace {

std::string all_test_sources() {
    std::string all;
    for (const auto& entry : fs::directory_iterator(COINDIFF_TEST_SOURCES)) {
        if (entry.path().extension() != ".cpp") continue;
        std::ifstream in(entry.path());
        std::stringstream ss;
        ss << in.rdbuf();
        all += ss.str();
    }
    return all;
}

} // namespace

TEST_CASE("every ledger entry is pinned by an existing test") {
    const auto sources = all_test_sources();
    const auto entries = convention_entries();
    CHECK(entries.size() >= 8);
    for (const auto& e : entries) {
        CAPTURE(e.name);
        CHECK_FALSE(e.pinning_test.empty());
        CHECK(sources.find("TEST_CASE(\"" + e.pinning_test + "\")") != std::string::npos);
    }
}

TEST_CASE("ledger reflects the compiled constants") {
    const auto text = render_ledger();
    CHECK(text.find(kPathConventions.bernoulli == BernoulliSign::Minus ? "b_1 = -1/2" : "b_1 = +1/2") !=
          std::string::npos);
    CHECK(text.find(kPathConventions.k_sign > 0 ? "K(p) = +c(k,n)" : "K(p) = -c(k,n)") != std::string::npos);
    CHECK(text.find(kChevalleyCocycle) != std::string::npos);
    CHECK(text.find("UNCALIBRATED") == std::string::npos);
    CHECK(render_ledger({}).find("UNCALIBRATED") != std::string::npos);
    // calibrated and face-value conventions differ
    CHECK_FALSE(kPathConventions == kFaceValueConventions);
    CHECK_FALSE(kOperatorConventions == kPrintedOperatorConventions);
}

TEST_CASE("convention switches enumerate all combinations") {
    const auto all = all_path_conventions();
    CHECK(all.size() == 16);
    CHECK(std::count(all.begin(), all.end(), kPathConventions) == 1);
    CHECK(std::count(all.begin(), all.end(), kFaceValueConventions) == 1);
    CHECK(to_string(kPathConventions).find("k_sign=+1") != std::string::npos);
}
