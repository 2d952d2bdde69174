// Copyright 2026 The ec3lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace ec3lab {

namespace signal {

struct Zero {};

/// Rectangular pulses of height `strength` for the first duty*interval of every interval.
struct PulseTrain {
    double strength;
    double interval;
    double duty = 0.5;
};

/// amplitude * cos^2(frequency * t)
struct Cos2 {
    double amplitude;
    double frequency;
};

/// amplitude * sin^2(frequency * t)
struct Sin2 {
    double amplitude;
    double frequency;
};

/// Uniform draws from [low, high], held for each interval [j*interval, (j+1)*interval).
/// The value on interval j is a pure function of (seed, j).
struct RandomHold {
    double low;
    double high;
    double interval;
    uint64_t seed;
};

}  // namespace signal

/// A fast control signal c(t)/J0 dressing the interpolating Hamiltonian.
using SignalSpec = std::variant<signal::Zero, signal::PulseTrain, signal::Cos2, signal::Sin2, signal::RandomHold>;

/// Throws ValidationError if the parameters are out of range or could drive
/// the dressed coefficient 1 + c below zero.
void validate(const SignalSpec &spec);

/// c(t)/J0. Requires t >= 0.
double sample(const SignalSpec &spec, double t);

/// 1 + c(t)/J0; non-negative for every valid spec.
double dressed_coefficient(const SignalSpec &spec, double t);

/// The first discontinuity strictly after t, or +infinity for continuous signals.
double next_breakpoint(const SignalSpec &spec, double t);

/// Largest dressed coefficient the signal can reach.
double peak_coefficient(const SignalSpec &spec);

/// Largest integration sub-step the signal tolerates: interval/4 for
/// piecewise signals, (2 pi / frequency)/20 for oscillating ones.
double max_substep(const SignalSpec &spec);

/// CLI syntax: zero | pulse:s=,delta=,duty= | cos2:a=,w= | sin2:a=,w= |
/// randhold:lo=,hi=,delta=,seed=. Throws ParseError; validates the result.
SignalSpec parse_signal(std::string_view text);

/// Canonical CLI form; parse_signal(format_signal(s)) reproduces s.
std::string format_signal(const SignalSpec &spec);

/// SplitMix64 finalizer. Public so the random-hold and random-interval
/// draws can be documented and replayed outside this library.
uint64_t splitmix64(uint64_t x);

/// Uniform double in [0, 1) determined by (seed, index): the top 53 bits of
/// splitmix64(seed ^ splitmix64(index)).
double counter_uniform(uint64_t seed, uint64_t index);

}  // namespace ec3lab
