#include "pfk/extremal.hpp"

#include <cmath>
#include <stdexcept>

#include "pfk/errors.hpp"

namespace pfk {

graph gen_hn(int n) {
    if (n < 1) throw std::invalid_argument("gen_hn: n >= 1 required");
    std::vector<std::pair<int, int>> es;
    es.emplace_back(0, 1);  // Q0 = a,x,y
    es.emplace_back(1, 2);
    for (int i = 1; i <= n; ++i) {
        int base = 3 + 7 * (i - 1);
        for (int j = 0; j < 6; ++j) es.emplace_back(base + j, base + j + 1);
        es.emplace_back(0, base + 3);  // a -- b_i
    }
    return graph::from_edges(3 + 7 * n, es);
}

graph gen_hprime(int k, int n) {
    if (k < 3 || k % 3 != 0) throw std::invalid_argument("gen_hprime: k >= 3 with k = 0 mod 3 required");
    if (n < 1) throw std::invalid_argument("gen_hprime: n >= 1 required");
    int m = k / 3;
    int block = (2 * m - 1) + 2 * (2 * m + 1);  // = 2k+1
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) es.emplace_back(u, v);  // core K_n
    for (int b = 0; b < 2 * n + 1; ++b) {
        int base = n + b * block;
        int pair_base = base + (2 * m - 1);
        for (int u = 0; u < 2 * m - 1; ++u)
            for (int v = u + 1; v < 2 * m - 1; ++v) es.emplace_back(base + u, base + v);
        for (int p = 0; p < 2 * m + 1; ++p) {
            es.emplace_back(pair_base + 2 * p, pair_base + 2 * p + 1);
            for (int u = 0; u < 2 * m - 1; ++u) {
                es.emplace_back(base + u, pair_base + 2 * p);
                es.emplace_back(base + u, pair_base + 2 * p + 1);
            }
        }
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < block; ++v) es.emplace_back(u, base + v);  // join to core
    }
    return graph::from_edges(n + (2 * n + 1) * block, es);
}

graph gen_path(int n) {
    if (n < 1) throw std::invalid_argument("gen_path: n >= 1 required");
    std::vector<std::pair<int, int>> es;
    for (int v = 0; v + 1 < n; ++v) es.emplace_back(v, v + 1);
    return graph::from_edges(n, es);
}

graph gen_cycle(int n) {
    if (n < 3) throw std::invalid_argument("gen_cycle: n >= 3 required");
    std::vector<std::pair<int, int>> es;
    for (int v = 0; v + 1 < n; ++v) es.emplace_back(v, v + 1);
    es.emplace_back(n - 1, 0);
    return graph::from_edges(n, es);
}

graph gen_complete(int n) {
    if (n < 1) throw std::invalid_argument("gen_complete: n >= 1 required");
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) es.emplace_back(u, v);
    return graph::from_edges(n, es);
}

std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

graph gen_random(int n, double p, std::uint64_t seed) {
    if (n < 0) throw std::invalid_argument("gen_random: n >= 0 required");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("gen_random: p in [0,1] required");
    std::uint64_t state = seed;
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            double draw = std::ldexp(static_cast<double>(splitmix64_next(state) >> 11), -53);
            if (draw < p) es.emplace_back(u, v);
        }
    return graph::from_edges(n, es);
}

family_spec parse_family_spec(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw parse_error("family spec: missing ':'");
    std::string name = text.substr(0, colon);
    std::string args = text.substr(colon + 1);
    std::vector<std::string> parts;
    std::size_t at = 0;
    while (at <= args.size()) {
        auto comma = args.find(',', at);
        if (comma == std::string::npos) {
            parts.push_back(args.substr(at));
            break;
        }
        parts.push_back(args.substr(at, comma - at));
        at = comma + 1;
    }
    auto as_int = [](const std::string& s) {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw parse_error("family spec: bad integer");
        return v;
    };

    family_spec spec;
    try {
        if (name == "Hn") {
            if (parts.size() != 1) throw parse_error("family spec: Hn:<n>");
            spec.id = family_spec::kind::hn;
            spec.n = as_int(parts[0]);
        } else if (name == "Hprime") {
            if (parts.size() != 2) throw parse_error("family spec: Hprime:<k>,<n>");
            spec.id = family_spec::kind::hprime;
            spec.k = as_int(parts[0]);
            spec.n = as_int(parts[1]);
        } else if (name == "path" || name == "cycle" || name == "complete") {
            if (parts.size() != 1) throw parse_error("family spec: " + name + ":<n>");
            spec.id = name == "path" ? family_spec::kind::path
                      : name == "cycle" ? family_spec::kind::cycle
                                        : family_spec::kind::complete;
            spec.n = as_int(parts[0]);
        } else if (name == "random") {
            if (parts.size() != 3) throw parse_error("family spec: random:<n>,<p>,<seed>");
            spec.id = family_spec::kind::random;
            spec.n = as_int(parts[0]);
            std::size_t used = 0;
            spec.p = std::stod(parts[1], &used);
            if (used != parts[1].size()) throw parse_error("family spec: bad probability");
            spec.seed = std::stoull(parts[2]);
        } else {
            throw parse_error("family spec: unknown family '" + name + "'");
        }
    } catch (const std::invalid_argument&) {
        throw parse_error("family spec: bad number in '" + text + "'");
    } catch (const std::out_of_range&) {
        throw parse_error("family spec: number out of range in '" + text + "'");
    }
    return spec;
}

graph gen_standard(const family_spec& spec) {
    switch (spec.id) {
        case family_spec::kind::hn: return gen_hn(spec.n);
        case family_spec::kind::hprime: return gen_hprime(spec.k, spec.n);
        case family_spec::kind::path: return gen_path(spec.n);
        case family_spec::kind::cycle: return gen_cycle(spec.n);
        case family_spec::kind::complete: return gen_complete(spec.n);
        case family_spec::kind::random: return gen_random(spec.n, spec.p, spec.seed);
    }
    throw std::logic_error("unreachable family kind");
}

}  // namespace pfk
