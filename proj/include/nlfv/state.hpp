#pragma once

#include <vector>

namespace nlfv {

// How cells outside the computational domain are filled when a stencil
// reaches past the boundary. Absorbing = copy the outermost physical value
// (zero-order extrapolation), which lets waves leave without reflection and
// preserves constant states.
enum class GhostPolicy { Absorbing };

// Cell averages at one time level. Entry m corresponds to cell index
// j = m - n_left of the mesh the state was built on (the mesh carries the
// index offset; states are plain value buffers).
struct State {
    std::vector<double> values;
    double time = 0.0;
    GhostPolicy ghost_policy = GhostPolicy::Absorbing;
};

} // namespace nlfv
