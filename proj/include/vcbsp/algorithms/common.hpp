#pragma once

#include "vcbsp/engine.hpp"
#include "vcbsp/graph.hpp"

namespace vcbsp {

// Shared knobs for the algorithm runners; maps 1:1 onto EngineConfig plus the
// request-respond switch for algorithms that have both variants.
struct AlgoOptions {
    int workers = 4;
    int threads = 1;
    bool combiner = true;
    MirrorMode mirror_mode = MirrorMode::Off;
    double mirror_threshold = 0.0;
    bool reqresp = true;
    int max_supersteps = 10000;
    UnknownTarget unknown_target = UnknownTarget::Error;
    bool check_bounds = true;
    bool combiner_check = false;
    std::uint64_t shuffle_seed = 0;
    bool audit = false;

    EngineConfig engine_config() const {
        EngineConfig c;
        c.workers = workers;
        c.threads = threads;
        c.combiner = combiner;
        c.mirror_mode = mirror_mode;
        c.mirror_threshold = mirror_threshold;
        c.max_supersteps = max_supersteps;
        c.unknown_target = unknown_target;
        c.check_bounds = check_bounds;
        c.combiner_check = combiner_check;
        c.shuffle_seed = shuffle_seed;
        c.audit = audit;
        return c;
    }
};

}  // namespace vcbsp
