#include "fracperim/minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "fracperim/error.hpp"
#include "fracperim/intervals.hpp"
#include "fracperim/parallel.hpp"

namespace fracperim {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Distance from x to the boundary of the box [lo, hi] along unit d, x inside.
double exit_distance(const Vec& x, const Vec& d, const Vec& lo, const Vec& hi) {
    double t = kInf;
    for (int a = 0; a < x.dim(); ++a) {
        if (d[a] > 0.0) t = std::min(t, (hi[a] - x[a]) / d[a]);
        if (d[a] < 0.0) t = std::min(t, (lo[a] - x[a]) / d[a]);
    }
    return t;
}

void beyond_box(const SetSpec& E, const Vec& x, const Vec& lo, const Vec& hi, double s, const GridOptions& go,
                double* out) {
    const RayOptions& rays = go.rays;
    const int n = x.dim();
    out[0] = out[1] = 0.0;
    if (n == 1) {
        for (double sign : {1.0, -1.0}) {
            const Vec d{sign};
            const double T = exit_distance(x, d, lo, hi);
            out[0] += radial_mass(E.ray(x, d, T, rays), T, s);
            out[1] += std::pow(T, -s) / s;
        }
        return;
    }
    std::vector<double> breaks;
    for (double cx : {lo[0], hi[0]})
        for (double cy : {lo[1], hi[1]}) breaks.push_back(std::atan2(cy - x[1], cx - x[0]));
    std::sort(breaks.begin(), breaks.end());
    const double start = breaks.front();
    for (double a : E.asymptotic_angles()) {
        const double w = start + std::fmod(std::fmod(a - start, 2.0 * kPi) + 2.0 * kPi, 2.0 * kPi);
        if (w > start && w < start + 2.0 * kPi) breaks.push_back(w);
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.push_back(start + 2.0 * kPi);
    breaks.erase(std::unique(breaks.begin(), breaks.end(), [](double a, double b) { return b - a < 1e-14; }),
                 breaks.end());
    AdaptiveOptions ao;
    ao.rel_tol = go.tail_rel_tol;
    ao.abs_tol = 1e-15;
    ao.control = {true, true};
    auto res = integrate_adaptive(
        [&](double th, double* o) {
            const Vec d{std::cos(th), std::sin(th)};
            const double T = exit_distance(x, d, lo, hi);
            o[0] = radial_mass(E.ray(x, d, T, rays), T, s);
            o[1] = std::pow(T, -s) / s;
        },
        2, breaks, ao);
    out[0] = res.value[0];
    out[1] = res.value[1];
}

// Tensor Chebyshev interpolant on [lo, hi] in two variables, barycentric evaluation.
class Chebyshev2 {
public:
    Chebyshev2(const Vec& lo, const Vec& hi, int degree, int components,
               const std::function<void(const Vec&, double*)>& f)
        : lo_(lo), hi_(hi), m_(degree), comps_(components) {
        nodes_.resize(m_ + 1);
        weights_.resize(m_ + 1);
        for (int k = 0; k <= m_; ++k) {
            nodes_[k] = std::cos(kPi * k / m_);
            weights_[k] = ((k % 2) ? -1.0 : 1.0) * ((k == 0 || k == m_) ? 0.5 : 1.0);
        }
        values_.assign(static_cast<std::size_t>((m_ + 1) * (m_ + 1) * comps_), 0.0);
        parallel_for(static_cast<std::size_t>((m_ + 1) * (m_ + 1)), [&](std::size_t idx) {
            const int i = static_cast<int>(idx) / (m_ + 1), j = static_cast<int>(idx) % (m_ + 1);
            f(point(i, j), &values_[idx * comps_]);
        });
    }

    void operator()(const Vec& x, double* out) const {
        std::vector<double> bx(m_ + 1), by(m_ + 1);
        const int ex = basis(to_unit(x[0], 0), bx), ey = basis(to_unit(x[1], 1), by);
        for (int c = 0; c < comps_; ++c) {
            double acc = 0.0;
            for (int i = 0; i <= m_; ++i) {
                if (ex >= 0 && i != ex) continue;
                for (int j = 0; j <= m_; ++j) {
                    if (ey >= 0 && j != ey) continue;
                    acc += bx[i] * by[j] * values_[(i * (m_ + 1) + j) * comps_ + c];
                }
            }
            out[c] = acc;
        }
    }

private:
    double to_unit(double v, int a) const { return (2.0 * v - lo_[a] - hi_[a]) / (hi_[a] - lo_[a]); }
    Vec point(int i, int j) const {
        return Vec{0.5 * (lo_[0] + hi_[0]) + 0.5 * (hi_[0] - lo_[0]) * nodes_[i],
                   0.5 * (lo_[1] + hi_[1]) + 0.5 * (hi_[1] - lo_[1]) * nodes_[j]};
    }
    // Normalized barycentric basis at u; returns the node index when u hits a node.
    int basis(double u, std::vector<double>& b) const {
        double total = 0.0;
        for (int k = 0; k <= m_; ++k) {
            const double diff = u - nodes_[k];
            if (diff == 0.0) {
                std::fill(b.begin(), b.end(), 0.0);
                b[k] = 1.0;
                return k;
            }
            b[k] = weights_[k] / diff;
            total += b[k];
        }
        for (double& v : b) v /= total;
        return -1;
    }

    Vec lo_, hi_;
    int m_, comps_;
    std::vector<double> nodes_, weights_, values_;
};

void assemble_coefficients(GridProblem& p) {
    const std::size_t N = p.size();
    std::vector<std::size_t> ext;
    for (std::size_t b = 0; b < p.in_domain.size(); ++b)
        if (!p.in_domain[b]) ext.push_back(b);
    auto box_coords = [&](std::size_t b) {
        if (p.n == 1) return std::pair<int, int>{static_cast<int>(b), 0};
        return std::pair<int, int>{static_cast<int>(b / p.dims[1]), static_cast<int>(b % p.dims[1])};
    };
    p.to_exterior.assign(N, 0.0);
    p.to_complement.assign(N, 0.0);
    p.row_sum.assign(N, 0.0);
    parallel_for(N, [&](std::size_t i) {
        const int ix = p.coords[i][0], iy = p.n == 2 ? p.coords[i][1] : 0;
        double a = 0.0, full = 0.0;
        for (std::size_t b : ext) {
            const auto [jx, jy] = box_coords(b);
            const double k = p.n == 1 ? p.kernel(ix - jx) : p.kernel(ix - jx, iy - jy);
            a += p.theta[b] * k;
            full += k;
        }
        double w = 0.0;
        for (std::size_t j = 0; j < N; ++j)
            if (j != i) w += p.pair(i, j);
        p.to_exterior[i] = a + p.tail_exterior[i];
        p.to_complement[i] = (full + p.tail_full[i]) - p.to_exterior[i];
        p.row_sum[i] = w;
    });
}

}  // namespace

std::pair<double, double> beyond_box_density(const SetSpec& exterior, const Vec& x, const Vec& lo, const Vec& hi,
                                             double s, const GridOptions& opt) {
    double v[2];
    beyond_box(exterior, x, lo, hi, s, opt, v);
    return {v[0], v[1]};
}

double GridProblem::pair(std::size_t i, std::size_t j) const {
    if (n == 1) return kernel(coords[i][0] - coords[j][0]);
    return kernel(coords[i][0] - coords[j][0], coords[i][1] - coords[j][1]);
}

GridProblem build_grid_problem(const Domain& omega, const SetSpec& exterior, double s, const GridOptions& opt) {
    const int n = omega.dim();
    require(n == 1 || n == 2, ErrorCode::dimension_mismatch, "grid problems support n = 1, 2");
    require(exterior.dim() == n, ErrorCode::dimension_mismatch, "exterior and domain dimensions differ");
    require(s > 0.0 && s < 1.0, ErrorCode::invalid_argument, "s must lie in (0,1)");
    require(opt.resolution >= 1 && opt.collar >= 1 && opt.subsamples >= 1 && opt.tail_degree >= 2,
            ErrorCode::invalid_argument, "grid options must be positive");
    require(n == 2 ? opt.resolution <= 64 : opt.resolution <= 256, ErrorCode::invalid_argument,
            "resolution limited to 64 cells per side in n = 2 and 256 in n = 1");

    GridProblem p;
    p.n = n;
    p.s = s;
    p.omega = omega;
    p.exterior = exterior;
    p.options = opt;
    const Vec lo = omega.lower_corner(), hi = omega.upper_corner();
    double extent = 0.0;
    for (int a = 0; a < n; ++a) extent = std::max(extent, hi[a] - lo[a]);
    p.h = extent / opt.resolution;
    Vec inner_lo(n), inner_hi(n);
    p.origin = Vec(n);
    p.dims.resize(n);
    for (int a = 0; a < n; ++a) {
        const int m = std::max(1, static_cast<int>(std::ceil((hi[a] - lo[a]) / p.h - 1e-9)));
        inner_lo[a] = 0.5 * (lo[a] + hi[a]) - 0.5 * m * p.h;
        inner_hi[a] = inner_lo[a] + m * p.h;
        p.origin[a] = inner_lo[a] - opt.collar * p.h;
        p.dims[a] = m + 2 * opt.collar;
    }
    const std::size_t total = n == 1 ? p.dims[0] : static_cast<std::size_t>(p.dims[0]) * p.dims[1];
    p.theta.assign(total, 0.0);
    p.in_domain.assign(total, 0);
    Vec box_hi(n);
    for (int a = 0; a < n; ++a) box_hi[a] = p.origin[a] + p.dims[a] * p.h;

    auto coords_of = [&](std::size_t b) {
        if (n == 1) return std::vector<int>{static_cast<int>(b)};
        return std::vector<int>{static_cast<int>(b / p.dims[1]), static_cast<int>(b % p.dims[1])};
    };
    auto corner_of = [&](const std::vector<int>& c) {
        Vec x(n);
        for (int a = 0; a < n; ++a) x[a] = p.origin[a] + c[a] * p.h;
        return x;
    };
    for (std::size_t b = 0; b < total; ++b) {
        const auto c = coords_of(b);
        Vec center = corner_of(c);
        for (int a = 0; a < n; ++a) center[a] += 0.5 * p.h;
        if (signed_distance(omega, center) < 0.0) {
            p.in_domain[b] = 1;
            p.cells.push_back(b);
            p.coords.push_back(c);
            p.centers.push_back(center);
        }
    }
    require(!p.cells.empty(), ErrorCode::invalid_argument, "domain contains no cell centers at this resolution");

    const int m = opt.subsamples;
    parallel_for(total, [&](std::size_t b) {
        if (p.in_domain[b]) return;
        const Vec corner = corner_of(coords_of(b));
        double hits = 0.0;
        const int count = n == 1 ? m : m * m;
        for (int k = 0; k < count; ++k) {
            Vec x = corner;
            x[0] += (k % m + 0.5) * p.h / m;
            if (n == 2) x[1] += (k / m + 0.5) * p.h / m;
            const Membership mb = exterior.contains(x);
            hits += mb == Membership::inside ? 1.0 : (mb == Membership::boundary ? 0.5 : 0.0);
        }
        p.theta[b] = hits / count;
    });

    int extent_cells = 0;
    for (int d : p.dims) extent_cells = std::max(extent_cells, d);
    p.kernel = KernelTable(n, s, p.h, extent_cells);

    // Interaction with everything beyond the box: Gauss points per cell against the tail density.
    const std::size_t N = p.size();
    p.tail_exterior.assign(N, 0.0);
    p.tail_full.assign(N, 0.0);
    const double g = 0.5 / std::sqrt(3.0);
    if (n == 1) {
        parallel_for(N, [&](std::size_t i) {
            for (double off : {-g, g}) {
                double v[2];
                beyond_box(exterior, Vec{p.centers[i][0] + off * p.h}, p.origin, box_hi, s, opt, v);
                p.tail_exterior[i] += 0.5 * p.h * v[0];
                p.tail_full[i] += 0.5 * p.h * v[1];
            }
        });
    } else {
        const Chebyshev2 tail(inner_lo, inner_hi, opt.tail_degree, 2, [&](const Vec& x, double* out) {
            beyond_box(exterior, x, p.origin, box_hi, s, opt, out);
        });
        for (std::size_t i = 0; i < N; ++i)
            for (double ox : {-g, g})
                for (double oy : {-g, g}) {
                    double v[2];
                    tail(Vec{p.centers[i][0] + ox * p.h, p.centers[i][1] + oy * p.h}, v);
                    p.tail_exterior[i] += 0.25 * p.h * p.h * v[0];
                    p.tail_full[i] += 0.25 * p.h * p.h * v[1];
                }
    }
    assemble_coefficients(p);
    return p;
}

GridProblem complement_problem(const GridProblem& p) {
    GridProblem q = p;
    q.exterior = p.exterior.complement();
    for (std::size_t b = 0; b < q.theta.size(); ++b)
        if (!q.in_domain[b]) q.theta[b] = 1.0 - p.theta[b];
    for (std::size_t i = 0; i < q.size(); ++i) {
        q.tail_exterior[i] = p.tail_full[i] - p.tail_exterior[i];
        std::swap(q.to_exterior[i], q.to_complement[i]);
    }
    return q;
}

double discrete_perimeter(const GridProblem& p, const State& state) {
    require(state.size() == p.size(), ErrorCode::dimension_mismatch, "state size differs from the domain cell count");
    double e = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (state[i]) {
            e += p.to_complement[i];
            for (std::size_t j = 0; j < p.size(); ++j)
                if (!state[j]) e += p.pair(i, j);
        } else {
            e += p.to_exterior[i];
        }
    }
    return e;
}

double flip_delta(const GridProblem& p, const State& state, std::size_t i) {
    State t = state;
    t[i] ^= 1;
    return discrete_perimeter(p, t) - discrete_perimeter(p, state);
}

FlipEvaluator::FlipEvaluator(const GridProblem& p, State initial) : p_(&p), state_(std::move(initial)) {
    require(state_.size() == p.size(), ErrorCode::dimension_mismatch, "state size differs from the domain cell count");
    occupied_sum_.assign(p.size(), 0.0);
    for (std::size_t j = 0; j < p.size(); ++j)
        if (state_[j])
            for (std::size_t i = 0; i < p.size(); ++i)
                if (i != j) occupied_sum_[i] += p.pair(i, j);
    energy_ = discrete_perimeter(p, state_);
}

double FlipEvaluator::delta(std::size_t i) const {
    const double d = p_->row_sum[i] - 2.0 * occupied_sum_[i] + p_->to_complement[i] - p_->to_exterior[i];
    return state_[i] ? -d : d;
}

void FlipEvaluator::flip(std::size_t i) {
    energy_ += delta(i);
    state_[i] ^= 1;
    const double sign = state_[i] ? 1.0 : -1.0;
    const auto& p = *p_;
    if (p.n == 1) {
        const int ix = p.coords[i][0];
        for (std::size_t j = 0; j < p.size(); ++j)
            if (j != i) occupied_sum_[j] += sign * p.kernel(p.coords[j][0] - ix);
        return;
    }
    const int ix = p.coords[i][0], iy = p.coords[i][1];
    for (std::size_t j = 0; j < p.size(); ++j)
        if (j != i) occupied_sum_[j] += sign * p.kernel(p.coords[j][0] - ix, p.coords[j][1] - iy);
}

std::string to_string(SolverKind k) {
    switch (k) {
        case SolverKind::automatic: return "automatic";
        case SolverKind::exhaustive: return "exhaustive";
        case SolverKind::anneal: return "anneal+descent";
    }
    return "automatic";
}

SolverKind solver_from_string(const std::string& s) {
    if (s == "automatic" || s == "auto") return SolverKind::automatic;
    if (s == "exhaustive") return SolverKind::exhaustive;
    if (s == "anneal" || s == "anneal+descent") return SolverKind::anneal;
    fail(ErrorCode::invalid_argument, "unknown solver '" + s + "'");
}

namespace {

double energy_scale(const GridProblem& p) {
    double m = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) m += p.row_sum[i] + p.to_exterior[i] + p.to_complement[i];
    return std::max(m, 1e-300);
}

// Single-flip descent to a state with no improving flip.
void descend(FlipEvaluator& ev, double tol) {
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t i = 0; i < ev.state().size(); ++i)
            if (ev.delta(i) < -tol) {
                ev.flip(i);
                improved = true;
            }
    }
}

struct RunOutcome {
    State state;
    double energy;
    std::vector<double> trace;
};

RunOutcome anneal_run(const GridProblem& p, const SolverConfig& cfg, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const std::size_t N = p.size();
    State init(N);
    for (auto& c : init) c = coin(rng) ? 1 : 0;
    FlipEvaluator ev(p, init);
    std::vector<double> mags(N);
    for (std::size_t i = 0; i < N; ++i) mags[i] = std::abs(ev.delta(i));
    std::nth_element(mags.begin(), mags.begin() + N / 2, mags.end());
    double T = std::max(mags[N / 2], 1e-300);
    std::vector<std::size_t> order(N);
    std::iota(order.begin(), order.end(), 0);
    RunOutcome out;
    for (int sweep = 0; sweep < cfg.sweeps; ++sweep) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t i : order) {
            const double d = ev.delta(i);
            if (d <= 0.0 || unif(rng) < std::exp(-d / T)) ev.flip(i);
        }
        T *= cfg.cooling;
        out.trace.push_back(ev.energy());
    }
    descend(ev, 1e-13 * energy_scale(p));
    out.state = ev.state();
    out.energy = discrete_perimeter(p, out.state);
    out.trace.push_back(out.energy);
    return out;
}

MinimizeResult exhaustive(const GridProblem& p) {
    const std::size_t N = p.size();
    FlipEvaluator ev(p, State(N, 0));
    State best = ev.state();
    double best_e = ev.energy();
    const double tol = 1e-12 * energy_scale(p);
    const std::uint64_t count = std::uint64_t{1} << N;
    for (std::uint64_t k = 1; k < count; ++k) {
        ev.flip(static_cast<std::size_t>(__builtin_ctzll(k)));
        if (ev.energy() < best_e - tol) {
            best_e = ev.energy();
            best = ev.state();
        }
    }
    MinimizeResult r;
    r.state = best;
    r.energy = discrete_perimeter(p, best);
    r.solver = SolverKind::exhaustive;
    r.restart_energies = {r.energy};
    r.trace = {r.energy};
    return r;
}

}  // namespace

MinimizeResult minimize(const GridProblem& p, const SolverConfig& cfg) {
    const std::size_t N = p.size();
    SolverKind kind = cfg.solver;
    if (kind == SolverKind::automatic)
        kind = N <= static_cast<std::size_t>(cfg.exhaustive_limit) ? SolverKind::exhaustive : SolverKind::anneal;
    if (kind == SolverKind::exhaustive) {
        require(N <= 20 && N <= static_cast<std::size_t>(std::max(cfg.exhaustive_limit, 0)),
                ErrorCode::precondition_violated, "exhaustive search needs at most 20 cells");
        return exhaustive(p);
    }
    require(cfg.restarts >= 1 && cfg.sweeps >= 0 && cfg.cooling > 0.0 && cfg.cooling <= 1.0,
            ErrorCode::invalid_argument, "invalid anneal schedule");
    std::vector<RunOutcome> runs(cfg.restarts);
    parallel_for(runs.size(), [&](std::size_t k) { runs[k] = anneal_run(p, cfg, cfg.seed + k); });

    std::size_t best = 0;
    for (std::size_t k = 1; k < runs.size(); ++k)
        if (runs[k].energy < runs[best].energy) best = k;
    MinimizeResult r;
    r.solver = SolverKind::anneal;
    r.state = runs[best].state;
    r.energy = runs[best].energy;
    r.trace = runs[best].trace;
    r.restarts_agreeing = 0;
    for (std::size_t k = 0; k < runs.size(); ++k) {
        r.restart_energies.push_back(runs[k].energy);
        r.seeds.push_back(cfg.seed + k);
        if (std::abs(runs[k].energy - r.energy) <= 1e-9 * std::max(std::abs(r.energy), 1e-300)) ++r.restarts_agreeing;
    }
    r.low_confidence = cfg.restarts > 1 && r.restarts_agreeing == 1;
    return r;
}

bool is_flip_stable(const GridProblem& p, const State& state) {
    FlipEvaluator ev(p, state);
    const double tol = 1e-12 * energy_scale(p);
    for (std::size_t i = 0; i < state.size(); ++i)
        if (ev.delta(i) < -tol) return false;
    return true;
}

double occupancy(const GridProblem& p, const State& state) {
    require(state.size() == p.size(), ErrorCode::dimension_mismatch, "state size differs from the domain cell count");
    return static_cast<double>(std::count(state.begin(), state.end(), 1)) / static_cast<double>(p.size());
}

RasterGrid state_raster(const GridProblem& p, const State& state) {
    RasterGrid g;
    g.origin = p.origin;
    g.cell = p.h;
    g.dims = p.dims;
    g.occupied.resize(p.theta.size());
    for (std::size_t b = 0; b < p.theta.size(); ++b) g.occupied[b] = p.theta[b] > 0.5 ? 1 : 0;
    for (std::size_t i = 0; i < p.size(); ++i) g.occupied[p.cells[i]] = state[i];
    return g;
}

}  // namespace fracperim
