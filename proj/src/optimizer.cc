// Copyright 2026 The ALSO Authors
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

#include "also/optimizer.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "also/errors.h"
#include "also/rng.h"

namespace also {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void put_number(std::ostream &out, double v) {
    if (std::isnan(v)) {
        out << "nan";
    } else {
        out << v;
    }
}

class TraceLogger {
   public:
    TraceLogger(const Monitor &monitor, OptTrace &trace) : monitor_(monitor), trace_(trace), start_(Clock::now()) {
    }

    void log(uint64_t iter, std::span<const double> theta, double backend, double gain_a = kNotLogged,
             double gain_c = kNotLogged) {
        TraceRow row;
        row.iter = iter;
        row.backend_value = backend;
        if (monitor_.exact) {
            row.exact_value = monitor_.exact(theta);
            if (!(row.exact_value >= best_exact_)) {
                best_exact_ = row.exact_value;
                best_theta_.assign(theta.begin(), theta.end());
            }
        }
        if (monitor_.infidelity) {
            row.infidelity = monitor_.infidelity(theta);
        }
        if (monitor_.copies) {
            row.copies = monitor_.copies();
        }
        row.gain_a = gain_a;
        row.gain_c = gain_c;
        row.wall_ms = elapsed_ms(start_);
        trace_.rows.push_back(row);
    }

    bool has_best() const {
        return !best_theta_.empty();
    }
    const std::vector<double> &best_theta() const {
        return best_theta_;
    }

   private:
    const Monitor &monitor_;
    OptTrace &trace_;
    Clock::time_point start_;
    double best_exact_ = std::numeric_limits<double>::infinity();
    std::vector<double> best_theta_;
};

struct CapReached {};

// Counts calls, refuses the one past the cap, and remembers the best point seen.
class CountedObjective {
   public:
    CountedObjective(const Objective &f, uint64_t cap) : f_(f), cap_(cap) {
    }

    double operator()(std::span<const double> x) {
        if (cap_ != 0 && count_ >= cap_) {
            throw CapReached{};
        }
        ++count_;
        const double v = f_(x);
        if (!std::isfinite(v)) {
            throw NumericalError("objective returned a non-finite value");
        }
        if (v < best_value_) {
            best_value_ = v;
            best_x_.assign(x.begin(), x.end());
        }
        return v;
    }

    uint64_t count() const {
        return count_;
    }
    double best_value() const {
        return best_value_;
    }
    const std::vector<double> &best_x() const {
        return best_x_;
    }

   private:
    const Objective &f_;
    uint64_t cap_;
    uint64_t count_ = 0;
    double best_value_ = std::numeric_limits<double>::infinity();
    std::vector<double> best_x_;
};

struct LinePoint {
    double x;
    double f;
};

// Downhill bracket (a, b, c) with f(b) <= f(a), f(b) <= f(c); fa is known.
void bracket(const std::function<double(double)> &f, LinePoint &a, LinePoint &b, LinePoint &c) {
    constexpr double gold = 1.618034;
    constexpr double limit = 100.0;
    constexpr double tiny = 1e-20;
    b.f = f(b.x);
    if (b.f > a.f) {
        std::swap(a, b);
    }
    c.x = b.x + gold * (b.x - a.x);
    c.f = f(c.x);
    for (int guard = 0; b.f > c.f && guard < 200; ++guard) {
        const double r = (b.x - a.x) * (b.f - c.f);
        const double q = (b.x - c.x) * (b.f - a.f);
        const double denom = 2.0 * std::copysign(std::max(std::abs(q - r), tiny), q - r);
        double u = b.x - ((b.x - c.x) * q - (b.x - a.x) * r) / denom;
        const double ulim = b.x + limit * (c.x - b.x);
        double fu = 0.0;
        if ((b.x - u) * (u - c.x) > 0.0) {
            fu = f(u);
            if (fu < c.f) {
                a = b;
                b = {u, fu};
                return;
            }
            if (fu > b.f) {
                c = {u, fu};
                return;
            }
            u = c.x + gold * (c.x - b.x);
            fu = f(u);
        } else if ((c.x - u) * (u - ulim) > 0.0) {
            fu = f(u);
            if (fu < c.f) {
                b = c;
                c = {u, fu};
                u = c.x + gold * (c.x - b.x);
                fu = f(u);
            }
        } else if ((u - ulim) * (ulim - c.x) >= 0.0) {
            u = ulim;
            fu = f(u);
        } else {
            u = c.x + gold * (c.x - b.x);
            fu = f(u);
        }
        a = b;
        b = c;
        c = {u, fu};
    }
}

// Brent's parabolic/golden minimization inside a bracket; b.f is known.
LinePoint brent(const std::function<double(double)> &f, LinePoint a, LinePoint b, LinePoint c, double tol) {
    constexpr double cgold = 0.3819660;
    constexpr double zeps = 1e-12;
    double lo = std::min(a.x, c.x);
    double hi = std::max(a.x, c.x);
    double x = b.x, w = b.x, v = b.x;
    double fx = b.f, fw = b.f, fv = b.f;
    double d = 0.0, e = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
        const double xm = 0.5 * (lo + hi);
        const double tol1 = tol * std::abs(x) + zeps;
        const double tol2 = 2.0 * tol1;
        if (std::abs(x - xm) <= tol2 - 0.5 * (hi - lo)) {
            break;
        }
        if (std::abs(e) > tol1) {
            const double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) {
                p = -p;
            }
            q = std::abs(q);
            const double etemp = e;
            e = d;
            if (std::abs(p) >= std::abs(0.5 * q * etemp) || p <= q * (lo - x) || p >= q * (hi - x)) {
                e = x >= xm ? lo - x : hi - x;
                d = cgold * e;
            } else {
                d = p / q;
                const double u = x + d;
                if (u - lo < tol2 || hi - u < tol2) {
                    d = std::copysign(tol1, xm - x);
                }
            }
        } else {
            e = x >= xm ? lo - x : hi - x;
            d = cgold * e;
        }
        const double u = std::abs(d) >= tol1 ? x + d : x + std::copysign(tol1, d);
        const double fu = f(u);
        if (fu <= fx) {
            (u >= x ? lo : hi) = x;
            v = w;
            w = x;
            x = u;
            fv = fw;
            fw = fx;
            fx = fu;
        } else {
            (u < x ? lo : hi) = u;
            if (fu <= fw || w == x) {
                v = w;
                w = u;
                fv = fw;
                fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u;
                fv = fu;
            }
        }
    }
    return {x, fx};
}

// Minimizes along `dir` from `p` (cost fp). Moves p, scales dir to the step taken.
double line_minimize(CountedObjective &f, std::vector<double> &p, std::vector<double> &dir, double fp, double tol) {
    if (std::all_of(dir.begin(), dir.end(), [](double v) { return v == 0.0; })) {
        return fp;
    }
    std::vector<double> trial(p.size());
    auto along = [&](double alpha) {
        for (size_t k = 0; k < p.size(); ++k) {
            trial[k] = p[k] + alpha * dir[k];
        }
        return f(trial);
    };
    LinePoint a{0.0, fp}, b{1.0, 0.0}, c{0.0, 0.0};
    bracket(along, a, b, c);
    const LinePoint best = brent(along, a, b, c, tol);
    if (best.f > fp) {
        return fp;
    }
    for (size_t k = 0; k < p.size(); ++k) {
        dir[k] *= best.x;
        p[k] += dir[k];
    }
    return best.f;
}

}  // namespace

size_t OptTrace::best_exact_row() const {
    size_t best = rows.size();
    for (size_t i = 0; i < rows.size(); ++i) {
        if (!std::isnan(rows[i].exact_value) && (best == rows.size() || rows[i].exact_value < rows[best].exact_value)) {
            best = i;
        }
    }
    return best;
}

void write_trace_csv(std::ostream &out, const OptTrace &trace) {
    const auto old_precision = out.precision(17);
    out << "iter,backend_value,exact_value,copies,wall_ms,infidelity,gain_a,gain_c\n";
    for (const auto &row : trace.rows) {
        out << row.iter << ',';
        put_number(out, row.backend_value);
        out << ',';
        put_number(out, row.exact_value);
        out << ',' << row.copies << ',';
        put_number(out, row.wall_ms);
        out << ',';
        put_number(out, row.infidelity);
        out << ',';
        put_number(out, row.gain_a);
        out << ',';
        put_number(out, row.gain_c);
        out << '\n';
    }
    out.precision(old_precision);
}

OptTrace read_trace_csv(std::istream &in) {
    OptTrace trace;
    std::string line;
    int lineno = 0;
    if (!std::getline(in, line)) {
        throw std::runtime_error("trace csv: empty input");
    }
    ++lineno;
    if (line != "iter,backend_value,exact_value,copies,wall_ms,infidelity,gain_a,gain_c") {
        throw std::runtime_error("trace csv line 1: unexpected header");
    }
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        if (cells.size() != 8) {
            throw std::runtime_error("trace csv line " + std::to_string(lineno) + ": expected 8 columns");
        }
        try {
            TraceRow row;
            row.iter = std::stoull(cells[0]);
            row.backend_value = std::stod(cells[1]);
            row.exact_value = std::stod(cells[2]);
            row.copies = std::stoull(cells[3]);
            row.wall_ms = std::stod(cells[4]);
            row.infidelity = std::stod(cells[5]);
            row.gain_a = std::stod(cells[6]);
            row.gain_c = std::stod(cells[7]);
            trace.rows.push_back(row);
        } catch (const std::logic_error &) {
            throw std::runtime_error("trace csv line " + std::to_string(lineno) + ": malformed number");
        }
    }
    return trace;
}

const char *to_string(OptStatus status) {
    switch (status) {
        case OptStatus::Completed:
            return "completed";
        case OptStatus::Converged:
            return "converged";
        case OptStatus::CapExhausted:
            return "cap-exhausted";
        case OptStatus::NumericalAbort:
            return "numerical-abort";
    }
    return "?";
}

uint64_t default_log_every(uint64_t iterations) {
    return iterations <= 3000 ? 1 : 1000;
}

OptResult spsa_minimize(const Objective &objective, std::vector<double> theta0, const SpsaConfig &cfg,
                        const Monitor &monitor) {
    if (cfg.iterations < 1) {
        throw std::invalid_argument("spsa: iterations must be >= 1");
    }
    if (!(cfg.exponent > 0.0)) {
        throw std::invalid_argument("spsa: exponent s must be > 0");
    }
    const uint64_t log_every = cfg.log_every == 0 ? default_log_every(cfg.iterations) : cfg.log_every;
    OptResult result;
    TraceLogger logger(monitor, result.trace);
    Rng rng(cfg.seed);
    std::vector<double> theta = std::move(theta0);
    const size_t dim = theta.size();
    std::vector<double> delta(dim), plus(dim), minus(dim);
    logger.log(0, theta, kNotLogged);
    try {
        for (uint64_t r = 1; r <= cfg.iterations; ++r) {
            const double gain = std::pow(static_cast<double>(r), -cfg.exponent);
            for (size_t k = 0; k < dim; ++k) {
                delta[k] = rng.below(2) == 0 ? -1.0 : 1.0;
                plus[k] = theta[k] + gain * delta[k];
                minus[k] = theta[k] - gain * delta[k];
            }
            const double fp = objective(plus);
            const double fm = objective(minus);
            result.evaluations += 2;
            if (!std::isfinite(fp) || !std::isfinite(fm)) {
                throw NumericalError("objective returned a non-finite value at iteration " + std::to_string(r));
            }
            // Delta^-1 == Delta for a Rademacher draw.
            const double scale = (fp - fm) / (2.0 * gain);
            for (size_t k = 0; k < dim; ++k) {
                theta[k] -= gain * scale * delta[k];
            }
            if (r % log_every == 0 || r == cfg.iterations) {
                logger.log(r, theta, 0.5 * (fp + fm), gain, gain);
            }
        }
        result.status = OptStatus::Completed;
    } catch (const NumericalError &e) {
        result.status = OptStatus::NumericalAbort;
        result.message = e.what();
    }
    result.theta = logger.has_best() ? logger.best_theta() : theta;
    return result;
}

OptResult powell_minimize(const Objective &objective, std::vector<double> theta0, const PowellConfig &cfg,
                          const Monitor &monitor) {
    if (!(cfg.line_tolerance > 0.0) || !(cfg.tolerance >= 0.0)) {
        throw std::invalid_argument("powell: tolerances must be positive");
    }
    OptResult result;
    TraceLogger logger(monitor, result.trace);
    CountedObjective f(objective, cfg.max_evaluations);
    const size_t dim = theta0.size();
    std::vector<std::vector<double>> directions(dim, std::vector<double>(dim, 0.0));
    for (size_t i = 0; i < dim; ++i) {
        directions[i][i] = 1.0;
    }
    std::vector<double> p = std::move(theta0);
    uint64_t lines = 0;
    result.status = OptStatus::Completed;
    try {
        double fret = f(p);
        logger.log(0, p, fret);
        std::vector<double> pt = p;
        for (uint64_t cycle = 0; cycle < cfg.max_cycles; ++cycle) {
            const double fp = fret;
            size_t ibig = 0;
            double biggest = 0.0;
            for (size_t i = 0; i < dim; ++i) {
                const double before = fret;
                fret = line_minimize(f, p, directions[i], fret, cfg.line_tolerance);
                logger.log(++lines, p, fret);
                if (before - fret > biggest) {
                    biggest = before - fret;
                    ibig = i;
                }
            }
            if (2.0 * (fp - fret) <= cfg.tolerance * (std::abs(fp) + std::abs(fret)) + 1e-25) {
                result.status = OptStatus::Converged;
                break;
            }
            std::vector<double> extrapolated(dim), net(dim);
            for (size_t k = 0; k < dim; ++k) {
                extrapolated[k] = 2.0 * p[k] - pt[k];
                net[k] = p[k] - pt[k];
            }
            pt = p;
            const double fe = f(extrapolated);
            if (fe < fp) {
                const double t = 2.0 * (fp - 2.0 * fret + fe) * (fp - fret - biggest) * (fp - fret - biggest) -
                                 biggest * (fp - fe) * (fp - fe);
                if (t < 0.0) {
                    fret = line_minimize(f, p, net, fret, cfg.line_tolerance);
                    logger.log(++lines, p, fret);
                    directions[ibig] = directions[dim - 1];
                    directions[dim - 1] = net;
                }
            }
        }
    } catch (const CapReached &) {
        result.status = OptStatus::CapExhausted;
        result.message = "evaluation cap of " + std::to_string(cfg.max_evaluations) + " reached";
        if (!f.best_x().empty()) {
            p = f.best_x();
            logger.log(++lines, p, f.best_value());
        }
    } catch (const NumericalError &e) {
        result.status = OptStatus::NumericalAbort;
        result.message = e.what();
    }
    result.evaluations = f.count();
    result.theta = logger.has_best() ? logger.best_theta() : p;
    return result;
}

}  // namespace also
