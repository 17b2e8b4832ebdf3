#pragma once

#include "ehae/solver.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ehae {

class CacheError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// 64-bit FNV-1a, lower-case hex.
std::string checksum_hex(const std::string& text);

inline constexpr const char* kCacheEnv = "EHAE_CACHE_DIR";

// One file per resolved family: P^{(g,h)}_0 plus its ambiguity coefficients,
// closed by a checksum line over everything above it.
class AmplitudeCache {
public:
    explicit AmplitudeCache(std::filesystem::path root);
    // $EHAE_CACHE_DIR if set, else ./ehae-cache
    static std::filesystem::path default_root();

    const std::filesystem::path& root() const { return root_; }
    std::filesystem::path entry_path(int g, int h) const;
    std::string entry_name(int g, int h) const;

    std::optional<std::pair<RingElement, std::vector<Rational>>> load(int g, int h) const;
    // Write-temp-then-rename.
    void save(int g, int h, const RingElement& p0, const std::vector<Rational>& ambiguity) const;

    // Names of all entries, sorted.
    std::vector<std::string> entries() const;
    // Entries whose checksum or contents do not parse.
    std::vector<std::string> audit() const;

    AmplitudePersistence persistence() const;

private:
    std::filesystem::path root_;
};

std::string encode_entry(int g, int h, const RingElement& p0, const std::vector<Rational>& ambiguity);
// Throws CacheError on checksum mismatch or malformed content.
std::pair<RingElement, std::vector<Rational>> decode_entry(const std::string& text, int g, int h);

}  // namespace ehae
