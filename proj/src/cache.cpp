#include "ehae/cache.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unistd.h>

namespace ehae {

namespace fs = std::filesystem;

std::string checksum_hex(const std::string& text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << hash;
    return os.str();
}

std::string encode_entry(int g, int h, const RingElement& p0, const std::vector<Rational>& ambiguity) {
    std::ostringstream os;
    os << "amplitude " << g << " " << h << " 0\n";
    os << "ambiguity " << ambiguity.size() << "\n";
    for (const auto& a : ambiguity) os << a.get_str() << "\n";
    os << serialize(p0);
    std::string body = os.str();
    return body + "checksum " + checksum_hex(body) + "\n";
}

std::pair<RingElement, std::vector<Rational>> decode_entry(const std::string& text, int g, int h) {
    auto pos = text.rfind("checksum ");
    if (pos == std::string::npos) throw CacheError("missing checksum line");
    std::string body = text.substr(0, pos);
    std::string stored = text.substr(pos + 9);
    while (!stored.empty() && (stored.back() == '\n' || stored.back() == '\r')) stored.pop_back();
    if (stored != checksum_hex(body)) throw CacheError("checksum mismatch");
    std::istringstream is(body);
    std::string key;
    int eg, eh, en;
    if (!(is >> key >> eg >> eh >> en) || key != "amplitude") throw CacheError("bad header");
    if (eg != g || eh != h || en != 0) throw CacheError("entry holds a different amplitude");
    std::size_t na = 0;
    if (!(is >> key >> na) || key != "ambiguity") throw CacheError("bad ambiguity header");
    std::vector<Rational> a(na);
    for (auto& x : a) {
        std::string s;
        if (!(is >> s)) throw CacheError("truncated ambiguity list");
        x = parse_rational(s);
    }
    std::string rest((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    try {
        return {parse_ring_element(rest), std::move(a)};
    } catch (const std::exception& e) {
        throw CacheError(std::string("bad ring element: ") + e.what());
    }
}

AmplitudeCache::AmplitudeCache(fs::path root) : root_(std::move(root)) {}

fs::path AmplitudeCache::default_root() {
    if (const char* env = std::getenv(kCacheEnv); env && *env) return fs::path(env);
    return fs::path("ehae-cache");
}

std::string AmplitudeCache::entry_name(int g, int h) const {
    return "P_g" + std::to_string(g) + "_h" + std::to_string(h) + "_n0.txt";
}

fs::path AmplitudeCache::entry_path(int g, int h) const { return root_ / entry_name(g, h); }

std::optional<std::pair<RingElement, std::vector<Rational>>> AmplitudeCache::load(int g, int h) const {
    fs::path p = entry_path(g, h);
    if (!fs::exists(p)) return std::nullopt;
    std::ifstream in(p, std::ios::binary);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return decode_entry(text, g, h);
    } catch (const CacheError& e) {
        throw CacheError(entry_name(g, h) + ": " + e.what());
    }
}

void AmplitudeCache::save(int g, int h, const RingElement& p0, const std::vector<Rational>& ambiguity) const {
    fs::create_directories(root_);
    fs::path final_path = entry_path(g, h);
    fs::path tmp = final_path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << encode_entry(g, h, p0, ambiguity);
        out.flush();
        if (!out) throw CacheError("cannot write " + tmp.string());
    }
    fs::rename(tmp, final_path);
}

std::vector<std::string> AmplitudeCache::entries() const {
    std::vector<std::string> out;
    if (!fs::exists(root_)) return out;
    for (const auto& e : fs::directory_iterator(root_)) {
        std::string name = e.path().filename().string();
        if (name.rfind("P_g", 0) == 0 && name.size() > 4 && name.substr(name.size() - 4) == ".txt") out.push_back(name);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> AmplitudeCache::audit() const {
    std::vector<std::string> bad;
    for (const auto& name : entries()) {
        int g = -1, h = -1;
        if (std::sscanf(name.c_str(), "P_g%d_h%d_n0.txt", &g, &h) != 2) {
            bad.push_back(name);
            continue;
        }
        try {
            load(g, h);
        } catch (const CacheError&) {
            bad.push_back(name);
        }
    }
    return bad;
}

AmplitudePersistence AmplitudeCache::persistence() const {
    AmplitudePersistence p;
    AmplitudeCache self = *this;
    p.load = [self](int g, int h) { return self.load(g, h); };
    p.save = [self](int g, int h, const RingElement& p0, const std::vector<Rational>& a) { self.save(g, h, p0, a); };
    return p;
}

}  // namespace ehae
