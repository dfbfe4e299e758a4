#pragma once

#include <cstdint>
#include <stdexcept>

#include "qens/rng.hpp"
#include "qens/sim/noise.hpp"

namespace qens {

// Evaluation backend for circuit expectations.
//
//   exact  — deterministic statevector expectations
//   shots  — exact state, finite measurement shots
//   noisy  — average over stochastic Pauli trajectories
//
// Stochastic backends hold a seed plus a call counter; every evaluation
// derives a fresh child stream, so a Backend value replayed from the same
// (seed, calls) state reproduces bitwise-identical results. Copy the value to
// fork a stream; reseed to decouple two consumers.
struct Backend {
    enum class Kind { exact, shots, noisy };

    Kind kind = Kind::exact;
    long long shots = 0;       // shots backend
    NoiseModel noise{};        // noisy backend
    int trajectories = 1;      // noisy backend
    std::uint64_t seed = 0;    // root of the evaluation streams
    std::uint64_t calls = 0;   // evaluations consumed so far

    static Backend exact() { return Backend{}; }

    static Backend with_shots(long long shots, std::uint64_t seed) {
        Backend backend;
        backend.kind = Kind::shots;
        backend.shots = shots;
        backend.seed = seed;
        backend.validate();
        return backend;
    }

    static Backend with_noise(const NoiseModel& noise, int trajectories, std::uint64_t seed) {
        Backend backend;
        backend.kind = Kind::noisy;
        backend.noise = noise;
        backend.trajectories = trajectories;
        backend.seed = seed;
        backend.validate();
        return backend;
    }

    bool is_exact() const { return kind == Kind::exact; }

    // same configuration, fresh stream
    Backend reseeded(std::uint64_t new_seed) const {
        Backend backend = *this;
        backend.seed = new_seed;
        backend.calls = 0;
        return backend;
    }

    void validate() const {
        if (kind == Kind::shots && shots < 1)
            throw std::invalid_argument("Backend: shots must be >= 1");
        if (kind == Kind::noisy) {
            noise.validate();
            if (trajectories < 1)
                throw std::invalid_argument("Backend: trajectories must be >= 1");
        }
    }

    // child seed for the next stochastic evaluation
    std::uint64_t next_eval_seed() { return derive_seed(seed, "eval", calls++); }
};

}  // namespace qens
