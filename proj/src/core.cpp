#include "banditnet/core.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace banditnet {

// ----------------------------------------------------------------------------
// dimensions
// ----------------------------------------------------------------------------

int Dimensions::stacked_dim() const {
    return d_common + std::accumulate(d_specific.begin(), d_specific.end(), 0);
}

int Dimensions::stacked_offset(int node) const {
    int off = d_common;
    for (int i = 0; i < node; ++i) off += d_specific.at(i);
    return off;
}

double Dimensions::mean_specific_dim() const {
    if (d_specific.empty()) throw std::invalid_argument("Dimensions: d_specific is empty");
    return static_cast<double>(std::accumulate(d_specific.begin(), d_specific.end(), 0)) /
           static_cast<double>(d_specific.size());
}

void Dimensions::validate() const {
    if (d_common < 1) throw std::invalid_argument("Dimensions: d_common must be >= 1");
    if (d_specific.empty()) throw std::invalid_argument("Dimensions: d_specific is empty");
    for (int d : d_specific)
        if (d < 1) throw std::invalid_argument("Dimensions: every d_specific entry must be >= 1");
}

// ----------------------------------------------------------------------------
// contexts
// ----------------------------------------------------------------------------

Eigen::VectorXd concat_context(const Context& ctx) {
    Eigen::VectorXd out(ctx.common.size() + ctx.specific.size());
    out << ctx.common, ctx.specific;
    return out;
}

Eigen::VectorXd clamp_to_unit_ball(const Eigen::VectorXd& v) {
    if (!v.allFinite())
        throw std::invalid_argument("clamp_to_unit_ball: input contains non-finite values");
    const double norm = v.norm();
    if (norm <= 1.0) return v;
    return v / norm;
}

// ----------------------------------------------------------------------------
// topology
// ----------------------------------------------------------------------------

Topology Topology::cliques(const std::vector<int>& sizes) {
    if (sizes.empty()) throw std::invalid_argument("Topology: component size list is empty");
    Topology t;
    int node = 0;
    for (int s : sizes) {
        if (s < 1) throw std::invalid_argument("Topology: component sizes must be >= 1");
        std::vector<int> comp(s);
        std::iota(comp.begin(), comp.end(), node);
        for (int i = 0; i < s; ++i) t.component_of_.push_back(t.n_components());
        t.members_.push_back(std::move(comp));
        node += s;
    }
    return t;
}

Topology Topology::fully_connected(int n_nodes) {
    Topology t = cliques({n_nodes});
    t.label_ = std::to_string(n_nodes);
    return t;
}

Topology Topology::singletons(int n_nodes) {
    Topology t = cliques(std::vector<int>(n_nodes, 1));
    t.label_ = "1x" + std::to_string(n_nodes);
    return t;
}

Topology Topology::parse(const std::string& label) {
    const auto bad = [&] {
        return std::invalid_argument(
            "Topology: cannot parse \"" + label +
            "\"; expected \"SIZExCOUNT\" (e.g. \"3x4\" = four cliques of three) "
            "or a bare node count (e.g. \"12\" = one fully connected component)");
    };
    if (label.empty()) throw bad();
    const auto xpos = label.find('x');
    try {
        if (xpos == std::string::npos) {
            const int n = std::stoi(label);
            if (n < 1 || std::to_string(n) != label) throw bad();
            return fully_connected(n);
        }
        const int size = std::stoi(label.substr(0, xpos));
        const int count = std::stoi(label.substr(xpos + 1));
        if (size < 1 || count < 1 ||
            label != std::to_string(size) + "x" + std::to_string(count))
            throw bad();
        Topology t = cliques(std::vector<int>(count, size));
        t.label_ = label;
        return t;
    } catch (const std::invalid_argument&) {
        throw bad();
    } catch (const std::out_of_range&) {
        throw bad();
    }
}

int Topology::component_size(int node) const {
    return static_cast<int>(members_.at(component_of_.at(node)).size());
}

bool Topology::connected(int i, int j) const {
    return component_of_.at(i) == component_of_.at(j);
}

const std::vector<int>& Topology::neighbors(int node) const {
    return members_.at(component_of_.at(node));
}

// ----------------------------------------------------------------------------
// seed derivation
// ----------------------------------------------------------------------------

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {
std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    return splitmix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}
}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, Stream purpose, std::uint64_t a,
                          std::uint64_t b, std::uint64_t c) {
    std::uint64_t h = splitmix64(seed);
    h = mix(h, static_cast<std::uint64_t>(purpose));
    h = mix(h, a);
    h = mix(h, b);
    h = mix(h, c);
    return h;
}

std::mt19937_64 make_engine(std::uint64_t seed, Stream purpose, std::uint64_t a,
                            std::uint64_t b, std::uint64_t c) {
    return std::mt19937_64(derive_seed(seed, purpose, a, b, c));
}

}  // namespace banditnet
