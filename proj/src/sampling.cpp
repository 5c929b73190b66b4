#include "perclab/sampling.hpp"

#include <sstream>

#include "perclab/errors.hpp"

namespace perclab {

BitVec sample_configuration(const LadderWindow& window, const EdgeClassMap& classes,
                            const ParamSet& params, std::uint64_t seed) {
    params.validate(classes.class_count());
    if (static_cast<int>(classes.class_of.size()) != window.edge_count())
        throw ValidationError("class map does not match window edge count");
    Rng rng(seed);
    BitVec bits(window.edge_count());
    for (int e = 0; e < window.edge_count(); ++e)
        bits.set(e, rng.uniform() < params.edge_probability(classes.class_of[e]));
    return bits;
}

std::vector<double> draw_edge_uniforms(int edge_count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> u(static_cast<std::size_t>(edge_count));
    for (auto& x : u) x = rng.uniform();
    return u;
}

BitVec threshold_uniforms(const std::vector<double>& uniforms, const EdgeClassMap& classes,
                          const ParamSet& params) {
    params.validate(classes.class_count());
    if (uniforms.size() != classes.class_of.size())
        throw ValidationError("uniform field does not match class map size");
    BitVec bits(static_cast<int>(uniforms.size()));
    for (int e = 0; e < static_cast<int>(uniforms.size()); ++e)
        bits.set(e, uniforms[static_cast<std::size_t>(e)] <
                        params.edge_probability(classes.class_of[static_cast<std::size_t>(e)]));
    return bits;
}

std::string dump_configuration(const LadderWindow& window, const BitVec& bits) {
    if (bits.size() != window.edge_count())
        throw ValidationError("configuration size does not match window");
    std::ostringstream out;
    out << std::hex << window.structure_hash() << ":" << std::dec << bits.size() << ":"
        << bits.to_hex();
    return out.str();
}

BitVec load_configuration(const LadderWindow& window, const std::string& dump) {
    const auto c1 = dump.find(':');
    const auto c2 = dump.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw ValidationError("malformed configuration dump");
    const std::uint64_t hash = std::stoull(dump.substr(0, c1), nullptr, 16);
    const int n = std::stoi(dump.substr(c1 + 1, c2 - c1 - 1));
    if (hash != window.structure_hash())
        throw ValidationError("configuration dump belongs to a different window");
    if (n != window.edge_count())
        throw ValidationError("configuration dump has wrong edge count");
    return BitVec::from_hex(dump.substr(c2 + 1), n);
}

}  // namespace perclab
