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

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "ec3lab/errors.h"

namespace ec3lab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double interval_index(double t, double interval) {
    return std::floor(t / interval);
}

std::map<std::string, std::string> parse_params(std::string_view body, std::string_view kind) {
    std::map<std::string, std::string> out;
    size_t pos = 0;
    while (pos < body.size()) {
        size_t comma = body.find(',', pos);
        if (comma == std::string_view::npos) {
            comma = body.size();
        }
        auto item = body.substr(pos, comma - pos);
        size_t eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0) {
            throw ParseError("signal '" + std::string(kind) + "': expected key=value, got '" + std::string(item) + "'");
        }
        out[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
        pos = comma + 1;
    }
    return out;
}

double take_double(std::map<std::string, std::string> &params, const std::string &key, std::string_view kind) {
    auto it = params.find(key);
    if (it == params.end()) {
        throw ParseError("signal '" + std::string(kind) + "': missing parameter '" + key + "'");
    }
    const std::string text = it->second;
    params.erase(it);
    char *end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (text.empty() || *end != '\0') {
        throw ParseError("signal '" + std::string(kind) + "': parameter '" + key + "' is not a number: '" + text + "'");
    }
    return v;
}

uint64_t take_u64(std::map<std::string, std::string> &params, const std::string &key, std::string_view kind) {
    auto it = params.find(key);
    if (it == params.end()) {
        throw ParseError("signal '" + std::string(kind) + "': missing parameter '" + key + "'");
    }
    const std::string text = it->second;
    params.erase(it);
    uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError("signal '" + std::string(kind) + "': parameter '" + key + "' is not an unsigned integer");
    }
    return v;
}

void reject_leftovers(const std::map<std::string, std::string> &params, std::string_view kind) {
    if (!params.empty()) {
        throw ParseError("signal '" + std::string(kind) + "': unknown parameter '" + params.begin()->first + "'");
    }
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    // Prefer the short form when it round-trips.
    char short_buf[40];
    std::snprintf(short_buf, sizeof short_buf, "%.12g", v);
    return std::strtod(short_buf, nullptr) == v ? short_buf : buf;
}

}  // namespace

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double counter_uniform(uint64_t seed, uint64_t index) {
    return static_cast<double>(splitmix64(seed ^ splitmix64(index)) >> 11) * 0x1p-53;
}

void validate(const SignalSpec &spec) {
    auto fail = [](const std::string &msg) { throw ValidationError("signal: " + msg); };
    std::visit(
        overloaded{
            [](const signal::Zero &) {},
            [&](const signal::PulseTrain &p) {
                if (!(p.strength >= 0) || !std::isfinite(p.strength)) fail("pulse strength must be finite and >= 0");
                if (!(p.interval > 0) || !std::isfinite(p.interval)) fail("pulse interval must be > 0");
                if (!(p.duty > 0 && p.duty <= 1)) fail("pulse duty must lie in (0, 1]");
            },
            [&](const signal::Cos2 &c) {
                if (!std::isfinite(c.amplitude) || !std::isfinite(c.frequency)) fail("cos2 parameters must be finite");
                if (c.amplitude < -1) fail("cos2 amplitude below -1 makes the dressed coefficient negative");
            },
            [&](const signal::Sin2 &c) {
                if (!std::isfinite(c.amplitude) || !std::isfinite(c.frequency)) fail("sin2 parameters must be finite");
                if (c.amplitude < -1) fail("sin2 amplitude below -1 makes the dressed coefficient negative");
            },
            [&](const signal::RandomHold &r) {
                if (!std::isfinite(r.low) || !std::isfinite(r.high)) fail("randhold bounds must be finite");
                if (r.low > r.high) fail("randhold requires lo <= hi");
                if (r.low < -1) fail("randhold lo below -1 makes the dressed coefficient negative");
                if (!(r.interval > 0) || !std::isfinite(r.interval)) fail("randhold interval must be > 0");
            },
        },
        spec);
}

double sample(const SignalSpec &spec, double t) {
    return std::visit(
        overloaded{
            [](const signal::Zero &) { return 0.0; },
            [t](const signal::PulseTrain &p) {
                double phase = t - interval_index(t, p.interval) * p.interval;
                return phase < p.duty * p.interval ? p.strength : 0.0;
            },
            [t](const signal::Cos2 &c) {
                double v = std::cos(c.frequency * t);
                return c.amplitude * v * v;
            },
            [t](const signal::Sin2 &c) {
                double v = std::sin(c.frequency * t);
                return c.amplitude * v * v;
            },
            [t](const signal::RandomHold &r) {
                auto j = static_cast<uint64_t>(interval_index(t, r.interval));
                return r.low + (r.high - r.low) * counter_uniform(r.seed, j);
            },
        },
        spec);
}

double dressed_coefficient(const SignalSpec &spec, double t) {
    return 1.0 + sample(spec, t);
}

double next_breakpoint(const SignalSpec &spec, double t) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return std::visit(
        overloaded{
            [](const signal::Zero &) { return inf; },
            [t](const signal::PulseTrain &p) {
                double start = interval_index(t, p.interval) * p.interval;
                double off = start + p.duty * p.interval;
                if (p.duty < 1.0 && off > t) {
                    return off;
                }
                double next = start + p.interval;
                return next > t ? next : next + p.interval;
            },
            [](const signal::Cos2 &) { return inf; },
            [](const signal::Sin2 &) { return inf; },
            [t](const signal::RandomHold &r) {
                double next = (interval_index(t, r.interval) + 1) * r.interval;
                return next > t ? next : next + r.interval;
            },
        },
        spec);
}

double peak_coefficient(const SignalSpec &spec) {
    return std::visit(
        overloaded{
            [](const signal::Zero &) { return 1.0; },
            [](const signal::PulseTrain &p) { return 1.0 + p.strength; },
            [](const signal::Cos2 &c) { return 1.0 + std::max(0.0, c.amplitude); },
            [](const signal::Sin2 &c) { return 1.0 + std::max(0.0, c.amplitude); },
            [](const signal::RandomHold &r) { return 1.0 + r.high; },
        },
        spec);
}

double max_substep(const SignalSpec &spec) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    auto oscillating = [](double w) { return w == 0 ? inf : (2 * std::numbers::pi / std::abs(w)) / 20; };
    return std::visit(
        overloaded{
            [](const signal::Zero &) { return inf; },
            [](const signal::PulseTrain &p) { return p.interval / 4; },
            [&](const signal::Cos2 &c) { return oscillating(c.frequency); },
            [&](const signal::Sin2 &c) { return oscillating(c.frequency); },
            [](const signal::RandomHold &r) { return r.interval / 4; },
        },
        spec);
}

SignalSpec parse_signal(std::string_view text) {
    size_t colon = text.find(':');
    std::string_view kind = text.substr(0, colon);
    std::string_view body = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    auto params = parse_params(body, kind);
    SignalSpec spec;
    if (kind == "zero") {
        spec = signal::Zero{};
    } else if (kind == "pulse") {
        signal::PulseTrain p{};
        p.strength = take_double(params, "s", kind);
        p.interval = take_double(params, "delta", kind);
        p.duty = params.count("duty") ? take_double(params, "duty", kind) : 0.5;
        spec = p;
    } else if (kind == "cos2") {
        double a = take_double(params, "a", kind);
        spec = signal::Cos2{a, take_double(params, "w", kind)};
    } else if (kind == "sin2") {
        double a = take_double(params, "a", kind);
        spec = signal::Sin2{a, take_double(params, "w", kind)};
    } else if (kind == "randhold") {
        signal::RandomHold r{};
        r.low = take_double(params, "lo", kind);
        r.high = take_double(params, "hi", kind);
        r.interval = take_double(params, "delta", kind);
        r.seed = take_u64(params, "seed", kind);
        spec = r;
    } else {
        throw ParseError("unknown signal kind '" + std::string(kind) + "' (expected zero, pulse, cos2, sin2, randhold)");
    }
    reject_leftovers(params, kind);
    validate(spec);
    return spec;
}

std::string format_signal(const SignalSpec &spec) {
    return std::visit(
        overloaded{
            [](const signal::Zero &) { return std::string("zero"); },
            [](const signal::PulseTrain &p) {
                return "pulse:s=" + num(p.strength) + ",delta=" + num(p.interval) + ",duty=" + num(p.duty);
            },
            [](const signal::Cos2 &c) { return "cos2:a=" + num(c.amplitude) + ",w=" + num(c.frequency); },
            [](const signal::Sin2 &c) { return "sin2:a=" + num(c.amplitude) + ",w=" + num(c.frequency); },
            [](const signal::RandomHold &r) {
                return "randhold:lo=" + num(r.low) + ",hi=" + num(r.high) + ",delta=" + num(r.interval) +
                       ",seed=" + std::to_string(r.seed);
            },
        },
        spec);
}

}  // namespace ec3lab
