#include "doctest.h"

#include "ehae/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace ehae;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::string tmpl = (fs::temp_directory_path() / "ehae-test-XXXXXX").string();
        char* p = mkdtemp(tmpl.data());
        REQUIRE(p != nullptr);
        path = p;
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RingElement sample() {
    RingElement e = RingElement::generator(Basis::J, gen::v1) * field_disc(-2) +
                    RingElement::generator(Basis::J, gen::m1) * FieldElement::sqrt_z();
    return e.with_weights({0, 2});
}

SolverOptions quick() { return SolverOptions{24, 8, false}; }

}  // namespace

TEST_CASE("checksum") {
    CHECK(checksum_hex("") == "cbf29ce484222325");
    CHECK(checksum_hex("a") == "af63dc4c8601ec8c");
    CHECK(checksum_hex("a").size() == 16);
}

TEST_CASE("save and load") {
    TempDir dir;
    AmplitudeCache cache(dir.path / "store");
    CHECK(!cache.load(0, 3).has_value());
    std::vector<Rational> a = {make_rational(3, 4), make_rational(-9435, 4)};
    cache.save(0, 3, sample(), a);
    auto hit = cache.load(0, 3);
    REQUIRE(hit.has_value());
    CHECK(hit->first == sample());
    CHECK(hit->second == a);
    CHECK(cache.entries() == std::vector<std::string>{"P_g0_h3_n0.txt"});
    CHECK(cache.audit().empty());
    for (const auto& e : fs::directory_iterator(cache.root()))
        CHECK(e.path().filename().string().find(".tmp") == std::string::npos);
}

TEST_CASE("entries are plain text closed by a checksum") {
    std::string text = encode_entry(1, 1, sample(), {Rational(2)});
    CHECK(text.rfind("amplitude 1 1 0\nambiguity 1\n2\nbasis J\n", 0) == 0);
    auto pos = text.rfind("checksum ");
    CHECK(text.substr(pos + 9, 16) == checksum_hex(text.substr(0, pos)));
    CHECK_THROWS_AS(decode_entry(text, 0, 3), CacheError);
}

TEST_CASE("corruption is detected and names the entry") {
    TempDir dir;
    AmplitudeCache cache(dir.path);
    cache.save(1, 2, sample(), {Rational(1)});
    fs::path p = cache.entry_path(1, 2);
    std::string text = slurp(p);
    auto at = text.find_first_of("0123456789", text.find("terms"));
    text[at] = text[at] == '1' ? '2' : '1';
    std::ofstream(p, std::ios::binary | std::ios::trunc) << text;
    try {
        cache.load(1, 2);
        FAIL("corrupted entry loaded");
    } catch (const CacheError& e) {
        std::string msg = e.what();
        CHECK(msg.find("P_g1_h2_n0.txt") != std::string::npos);
        CHECK(msg.find("checksum") != std::string::npos);
    }
    CHECK(cache.audit() == std::vector<std::string>{"P_g1_h2_n0.txt"});

    std::ofstream(p, std::ios::binary | std::ios::trunc) << "amplitude 1 2 0\n";
    CHECK_THROWS_AS(cache.load(1, 2), CacheError);
}

TEST_CASE("default root follows the environment") {
    const char* old = std::getenv(kCacheEnv);
    std::string saved = old ? old : "";
    setenv(kCacheEnv, "/tmp/somewhere-else", 1);
    CHECK(AmplitudeCache::default_root() == fs::path("/tmp/somewhere-else"));
    unsetenv(kCacheEnv);
    CHECK(AmplitudeCache::default_root() == fs::path("ehae-cache"));
    if (old) setenv(kCacheEnv, saved.c_str(), 1);
}

TEST_CASE("solver stores only resolved families") {
    TempDir dir;
    AmplitudeCache cache(dir.path);
    Solver s(quick());
    s.set_persistence(cache.persistence());
    s.resolve(1, 1);
    s.bps(1, 1);
    CHECK(cache.entries() == std::vector<std::string>{"P_g1_h1_n0.txt"});
    auto hit = cache.load(1, 1);
    REQUIRE(hit.has_value());
    CHECK(hit->first == s.store().normalized(1, 1, 0));
    CHECK(hit->second == s.store().ambiguity(1, 1));
}

TEST_CASE("warm cache is reused without rewriting") {
    TempDir dir;
    AmplitudeCache cache(dir.path);
    BpsColumn cold;
    {
        Solver s(quick());
        s.set_persistence(cache.persistence());
        cold = s.bps(0, 4);
        CHECK(!s.store().provenance(0, 4).from_cache);
    }
    CHECK(cache.entries() == std::vector<std::string>{"P_g0_h3_n0.txt", "P_g0_h4_n0.txt"});
    std::map<std::string, std::pair<std::string, fs::file_time_type>> before;
    for (const auto& n : cache.entries()) before[n] = {slurp(dir.path / n), fs::last_write_time(dir.path / n)};

    Solver warm(quick());
    warm.set_persistence(cache.persistence());
    CHECK(warm.bps(0, 4) == cold);
    CHECK(warm.store().provenance(0, 4).from_cache);
    CHECK(warm.store().provenance(0, 3).from_cache);
    for (const auto& n : cache.entries()) {
        CHECK(slurp(dir.path / n) == before[n].first);
        CHECK(fs::last_write_time(dir.path / n) == before[n].second);
    }
}

TEST_CASE("a corrupted entry stops the solver") {
    TempDir dir;
    AmplitudeCache cache(dir.path);
    {
        Solver s(quick());
        s.set_persistence(cache.persistence());
        s.resolve(0, 3);
    }
    fs::path p = cache.entry_path(0, 3);
    std::string text = slurp(p);
    text.insert(text.find("terms"), "x");
    std::ofstream(p, std::ios::binary | std::ios::trunc) << text;
    Solver s(quick());
    s.set_persistence(cache.persistence());
    CHECK_THROWS_AS(s.resolve(0, 4), CacheError);
}
