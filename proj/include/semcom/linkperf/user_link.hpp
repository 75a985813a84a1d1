#pragma once

#include "semcom/fading/fisher_f.hpp"
#include "semcom/fading/sinr.hpp"
#include "semcom/linkperf/bep.hpp"
#include "semcom/linkperf/tdp.hpp"

namespace semcom::linkperf {

/// Full channel description of one served user. The fading block is the
/// per-antenna description; SINR parameter sets derived from it apply the
/// sum-of-F antenna reduction.
struct UserLink {
    fading::FadingParams fading;
    fading::LinkGeometry geometry;
    fading::InterferenceParams interference;
    ModulationParams modulation;
    TripletCoding coding;

    void validate() const {
        fading.validate();
        geometry.validate();
        interference.validate();
        modulation.validate();
        coding.validate();
    }

    fading::SinrParams sinr_at(double p_tx) const {
        return fading::SinrParams::make(fading, geometry, interference, p_tx);
    }
};

}  // namespace semcom::linkperf
