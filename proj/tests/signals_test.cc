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

#include "ec3lab/signals.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "ec3lab/errors.h"

using namespace ec3lab;

TEST(signals, continuous_examples) {
    EXPECT_EQ(sample(signal::Cos2{2, 10}, 0.0), 2.0);
    EXPECT_EQ(sample(signal::Sin2{2, 10}, 0.0), 0.0);
    EXPECT_NEAR(sample(signal::Cos2{2, 10}, 0.3), 2 * std::pow(std::cos(3.0), 2), 1e-15);
}

TEST(signals, pulse_train_examples) {
    SignalSpec p = signal::PulseTrain{2, 0.08, 0.5};
    EXPECT_EQ(sample(p, 0.01), 2.0);
    EXPECT_EQ(sample(p, 0.05), 0.0);
    EXPECT_EQ(sample(p, 0.09), 2.0);
    EXPECT_EQ(dressed_coefficient(p, 0.01), 3.0);
    EXPECT_EQ(dressed_coefficient(signal::Zero{}, 12.3), 1.0);
}

TEST(signals, random_hold_is_replayable_and_bounded) {
    SignalSpec r = signal::RandomHold{1, 2, 0.04, 42};
    for (double t = 0; t < 4; t += 0.013) {
        double c = dressed_coefficient(r, t);
        EXPECT_GE(c, 2.0);
        EXPECT_LE(c, 3.0);
        EXPECT_EQ(c, dressed_coefficient(signal::RandomHold{1, 2, 0.04, 42}, t));
    }
    EXPECT_NE(sample(r, 0.01), sample(signal::RandomHold{1, 2, 0.04, 43}, 0.01));
}

TEST(signals, piecewise_signals_hold_between_breakpoints) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0, 1);
    for (SignalSpec spec : {SignalSpec{signal::PulseTrain{3, 0.1, 0.3}}, SignalSpec{signal::RandomHold{0, 5, 0.1, 1}}}) {
        for (int i = 0; i < 200; i++) {
            double t = 10 * u(rng);
            double b = next_breakpoint(spec, t);
            ASSERT_GT(b, t);
            double t2 = t + (b - t) * u(rng) * 0.999;
            EXPECT_EQ(sample(spec, t), sample(spec, t2));
        }
    }
}

TEST(signals, next_breakpoint_positions) {
    SignalSpec p = signal::PulseTrain{2, 0.08, 0.5};
    EXPECT_NEAR(next_breakpoint(p, 0.0), 0.04, 1e-15);
    EXPECT_NEAR(next_breakpoint(p, 0.05), 0.08, 1e-15);
    EXPECT_TRUE(std::isinf(next_breakpoint(signal::Cos2{2, 10}, 1.0)));
    SignalSpec full = signal::PulseTrain{2, 0.1, 1.0};
    EXPECT_NEAR(next_breakpoint(full, 0.05), 0.1, 1e-15);
}

TEST(signals, means_by_quadrature) {
    // Midpoint quadrature over [0, 100] with 10^6 nodes.
    auto mean = [](const SignalSpec &spec) {
        const int nodes = 1000000;
        const double T = 100;
        double acc = 0;
        for (int i = 0; i < nodes; i++) {
            acc += sample(spec, (i + 0.5) * T / nodes);
        }
        return acc / nodes;
    };
    EXPECT_NEAR(mean(signal::Cos2{2, 10}), 1.0, 0.02);
    EXPECT_NEAR(mean(signal::Sin2{2, 10}), 1.0, 0.02);
    for (double s : {0.5, 2.0, 5.0}) {
        EXPECT_NEAR(mean(signal::PulseTrain{s, 0.08, 0.5}), s / 2, 0.02);
    }
}

TEST(signals, parse_and_format_round_trip) {
    for (std::string text : {"zero", "pulse:s=2,delta=0.08,duty=0.5", "cos2:a=2,w=10", "sin2:a=2,w=10",
                             "randhold:lo=1,hi=2,delta=0.04,seed=18446744073709551615"}) {
        EXPECT_EQ(format_signal(parse_signal(text)), text);
    }
    auto p = std::get<signal::PulseTrain>(parse_signal("pulse:delta=0.04,s=5"));
    EXPECT_EQ(p.duty, 0.5);
    EXPECT_EQ(p.strength, 5.0);
}

TEST(signals, parse_errors) {
    EXPECT_THROW(parse_signal("square:s=1"), ParseError);
    EXPECT_THROW(parse_signal("pulse:s=1"), ParseError);
    EXPECT_THROW(parse_signal("pulse:s=x,delta=1"), ParseError);
    EXPECT_THROW(parse_signal("cos2:a=2,w=10,phase=1"), ParseError);
    EXPECT_THROW(parse_signal("randhold:lo=1,hi=2,delta=0.1,seed=-3"), ParseError);
}

TEST(signals, validation_errors) {
    EXPECT_THROW(parse_signal("randhold:lo=2,hi=1,delta=0.1,seed=1"), ValidationError);
    EXPECT_THROW(parse_signal("randhold:lo=-2,hi=1,delta=0.1,seed=1"), ValidationError);
    EXPECT_THROW(parse_signal("pulse:s=1,delta=0.1,duty=0"), ValidationError);
    EXPECT_THROW(parse_signal("pulse:s=-1,delta=0.1"), ValidationError);
    EXPECT_THROW(parse_signal("pulse:s=1,delta=0"), ValidationError);
    EXPECT_THROW(parse_signal("cos2:a=-3,w=1"), ValidationError);
}

TEST(signals, substep_limits) {
    EXPECT_NEAR(max_substep(signal::PulseTrain{2, 0.08, 0.5}), 0.02, 1e-15);
    EXPECT_NEAR(max_substep(signal::Cos2{2, 10}), 2 * M_PI / 10 / 20, 1e-15);
    EXPECT_TRUE(std::isinf(max_substep(signal::Zero{})));
    EXPECT_EQ(peak_coefficient(signal::PulseTrain{30, 0.08, 0.5}), 31.0);
}

TEST(signals, counter_rng_is_platform_stable) {
    // Reference first output of SplitMix64 from state 0.
    EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFULL);
    for (uint64_t j = 0; j < 1000; j++) {
        double u = counter_uniform(7, j);
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
    EXPECT_EQ(counter_uniform(7, 3), counter_uniform(7, 3));
}
