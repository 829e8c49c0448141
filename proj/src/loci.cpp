#include "engel/loci.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "engel/errors.hpp"

namespace engel {

namespace {

double norm4(const std::array<double, 4>& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
}

double dot4(const std::array<double, 4>& a, const std::array<double, 4>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

int sgn(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// Damped Gauss-Newton on the numerator pair. Returns the refined point or
// nullopt on divergence.
std::optional<FloatPoint> refine_on_section(const SectionRep& s, FloatPoint x, double refine_tol,
                                            const Tolerances& tol) {
    double res = s.residual_at(x);
    for (int iter = 0; iter < tol.newton_max_iter; ++iter) {
        if (res <= refine_tol) return x;
        Jacobian2x4 j = s.jacobian_at(x);
        auto nums = s.numerators_at(x);
        auto step = pseudo_inverse_apply(j, nums);
        if (!step) return std::nullopt;
        double lambda = 1.0;
        bool improved = false;
        for (int halvings = 0; halvings < 24; ++halvings) {
            FloatPoint trial;
            for (int k = 0; k < 4; ++k) trial[k] = x[k] - lambda * (*step)[k];
            double trial_res = s.residual_at(trial);
            if (trial_res < res) {
                x = trial;
                res = trial_res;
                improved = true;
                break;
            }
            lambda *= tol.newton_damping;
        }
        if (!improved) return std::nullopt;
    }
    return s.residual_at(x) <= refine_tol ? std::optional<FloatPoint>(x) : std::nullopt;
}

struct SectionPair {
    SectionRep d1;
    SectionRep d2;
};

SectionPair companion_sections(const SectionRep& s) {
    SectionPair pair;
    pair.d1 = s.kind == SectionKind::Delta1 ? s : delta1(s.frame, s.complement);
    pair.d2 = s.kind == SectionKind::Delta2 ? s : delta2(s.frame, s.complement);
    return pair;
}

LocusTag classify_point(const SectionPair& sp, const FloatPoint& p, const Tolerances& tol) {
    bool on_sigma1 = sp.d1.residual_at(p) <= tol.classify_tol;
    if (on_sigma1 && jacobian_sv_ratio(sp.d2.jacobian_at(p)) < tol.c_sv_ratio) return LocusTag::C;
    return on_sigma1 ? LocusTag::Sigma1 : LocusTag::Sigma2;
}

// Deterministic reference normal frame: the two coordinate axes with the
// largest projections onto the row space of J (greedy, ties to the lower
// axis), taken in ascending axis order and orthonormalized.
struct ReferenceFrame {
    std::array<int, 2> axes{};
    std::array<std::array<double, 4>, 2> frame{};
};

std::optional<ReferenceFrame> reference_normal_frame(const Jacobian2x4& j) {
    auto basis = row_space_basis(j);
    if (!basis) return std::nullopt;
    const auto& u1 = (*basis)[0];
    const auto& u2 = (*basis)[1];
    auto project = [&](int axis) {
        std::array<double, 4> p{};
        for (int k = 0; k < 4; ++k) p[k] = u1[k] * u1[axis] + u2[k] * u2[axis];
        return p;
    };
    int a = 0;
    double best = -1.0;
    for (int i = 0; i < 4; ++i) {
        double score = u1[i] * u1[i] + u2[i] * u2[i];
        if (score > best + 1e-15) {
            best = score;
            a = i;
        }
    }
    std::array<double, 4> n1 = project(a);
    double n1n = norm4(n1);
    if (n1n == 0.0) return std::nullopt;
    for (auto& x : n1) x /= n1n;
    int b = -1;
    best = -1.0;
    std::array<double, 4> n2{};
    for (int i = 0; i < 4; ++i) {
        if (i == a) continue;
        auto w = project(i);
        double c = dot4(w, n1);
        for (int k = 0; k < 4; ++k) w[k] -= c * n1[k];
        double score = dot4(w, w);
        if (score > best + 1e-15) {
            best = score;
            b = i;
            n2 = w;
        }
    }
    if (b < 0 || best <= 0.0) return std::nullopt;
    double n2n = norm4(n2);
    for (auto& x : n2) x /= n2n;
    ReferenceFrame rf;
    if (a < b) {
        rf.axes = {a, b};
        rf.frame = {n1, n2};
    } else {
        // Re-orthonormalize in ascending axis order so the stored frame is
        // deterministic in the axis indices alone.
        std::array<double, 4> m1 = project(b);
        double m1n = norm4(m1);
        for (auto& x : m1) x /= m1n;
        std::array<double, 4> m2 = project(a);
        double c = dot4(m2, m1);
        for (int k = 0; k < 4; ++k) m2[k] -= c * m1[k];
        double m2n = norm4(m2);
        for (auto& x : m2) x /= m2n;
        rf.axes = {b, a};
        rf.frame = {m1, m2};
    }
    return rf;
}

int frame_sign(const SectionRep& s, const Jacobian2x4& j, const std::array<double, 4>& v1,
               const std::array<double, 4>& v2, const Tolerances& tol) {
    auto c1 = j.apply(v1);
    auto c2 = j.apply(v2);
    double det = c1[0] * c2[1] - c1[1] * c2[0];
    double scale = std::hypot(c1[0], c1[1]) * std::hypot(c2[0], c2[1]);
    if (scale == 0.0 || std::abs(det) < 1e-12 * scale) return 0;
    return sgn(det) * tol.sign_convention;
}

} // namespace

const char* locus_tag_name(LocusTag tag) {
    switch (tag) {
        case LocusTag::Sigma1: return "S1";
        case LocusTag::Sigma2: return "S2";
        case LocusTag::C: return "C";
    }
    return "?";
}

int sign_against_frame(const SectionRep& s, const FloatPoint& p, const std::array<double, 4>& v1,
                       const std::array<double, 4>& v2, const Tolerances& tol) {
    return frame_sign(s, s.jacobian_at(p), v1, v2, tol);
}

int coorientation_sign(const SectionRep& s, LocusSample& sample, const Tolerances& tol) {
    Jacobian2x4 j = s.jacobian_at(sample.point);
    if (jacobian_sv_ratio(j) < tol.c_sv_ratio)
        throw Error(ErrorCode::NotTransverse, "section is not transverse at the sample");
    auto rf = reference_normal_frame(j);
    if (!rf) throw Error(ErrorCode::NotTransverse, "no rank-2 normal frame at the sample");
    sample.normal_frame = rf->frame;
    int sign = frame_sign(s, j, rf->frame[0], rf->frame[1], tol);
    if (sign == 0) throw Error(ErrorCode::NotTransverse, "degenerate sign at the sample");
    return sign;
}

LocusResult extract_locus(const SectionRep& s, const Box& box, int grid, double refine_tol,
                          const Tolerances& tol) {
    if (grid < 2) throw Error(ErrorCode::InvalidArgument, "grid must be >= 2");
    LocusResult out;
    SectionPair sp = companion_sections(s);

    std::array<double, 4> h;
    double h_max = 0.0;
    for (int k = 0; k < 4; ++k) {
        h[k] = (box.hi[k] - box.lo[k]) / (grid - 1);
        h_max = std::max(h_max, h[k]);
    }
    const double h_diag = norm4(h);
    const double merge_radius = 0.5 * h_max;

    std::vector<FloatPoint> refined;
    std::array<int, 4> idx{0, 0, 0, 0};
    while (true) {
        FloatPoint x;
        for (int k = 0; k < 4; ++k) x[k] = box.lo[k] + idx[k] * h[k];
        ++out.stats.grid_points;

        if (std::abs(s.den.evaluate(x)) <= tol.den_margin) {
            ++out.stats.dropped_den;
        } else {
            auto nums = s.numerators_at(x);
            bool seed = true;
            for (int i = 0; i < 2 && seed; ++i) {
                const PolyExpr& num = i == 0 ? s.num1 : s.num2;
                double bound = tol.seed_scale * norm4(num.gradient(x)) * h_diag;
                if (std::abs(nums[i]) > bound) seed = false;
            }
            if (seed) {
                ++out.stats.seeds;
                auto root = refine_on_section(s, x, refine_tol, tol);
                if (!root) {
                    ++out.stats.newton_diverged;
                } else {
                    bool inside = true;
                    for (int k = 0; k < 4; ++k)
                        if ((*root)[k] < box.lo[k] - h[k] || (*root)[k] > box.hi[k] + h[k])
                            inside = false;
                    if (!inside) {
                        ++out.stats.dropped_outside;
                    } else if (std::abs(s.den.evaluate(*root)) <= tol.den_margin) {
                        ++out.stats.dropped_den;
                    } else {
                        refined.push_back(*root);
                    }
                }
            }
        }

        int k = 3;
        while (k >= 0 && ++idx[k] == grid) idx[k--] = 0;
        if (k < 0) break;
    }

    // Deterministic merge: lexicographic sort, keep a point unless an
    // already-kept one lies within the merge radius.
    std::sort(refined.begin(), refined.end());
    std::vector<FloatPoint> kept;
    for (const auto& p : refined) {
        bool dup = false;
        for (auto it = kept.rbegin(); it != kept.rend(); ++it) {
            if (p[0] - (*it)[0] > merge_radius) break;
            double d2 = 0.0;
            for (int k = 0; k < 4; ++k) d2 += (p[k] - (*it)[k]) * (p[k] - (*it)[k]);
            if (d2 <= merge_radius * merge_radius) {
                dup = true;
                break;
            }
        }
        if (dup)
            ++out.stats.merged_duplicates;
        else
            kept.push_back(p);
    }

    for (const auto& p : kept) {
        LocusSample sample;
        sample.point = p;
        sample.residual = s.residual_at(p);
        sample.locus = classify_point(sp, p, tol);
        Jacobian2x4 j = s.jacobian_at(p);
        if (jacobian_sv_ratio(j) >= tol.c_sv_ratio) {
            sample.coorientation = coorientation_sign(s, sample, tol);
        } else {
            sample.coorientation = 0;
        }
        out.samples.push_back(std::move(sample));
    }
    return out;
}

ReversalReport reversal_check(const SectionRep& s, LocusTag locus, const ParamCurve& path,
                              int samples, const Tolerances& tol) {
    if (locus == LocusTag::C)
        throw Error(ErrorCode::InvalidArgument, "reversal path must lie on S1 or S2");
    if (s.kind == SectionKind::Delta1 && locus != LocusTag::Sigma1)
        throw Error(ErrorCode::InvalidArgument, "a Delta1 section only co-orients S1");
    SectionPair sp = companion_sections(s);
    const SectionRep& defining = locus == LocusTag::Sigma1 ? sp.d1 : sp.d2;

    ReversalReport report;
    report.expected_flip = s.kind == SectionKind::Delta2;
    std::optional<ReferenceFrame> fixed;
    for (int i = 0; i < samples; ++i) {
        double t = path.t0() + (path.t1() - path.t0()) * i / (samples - 1);
        auto root = refine_on_section(defining, path.at(t), tol.refine_tol, tol);
        if (!root) {
            ++report.nontransverse_samples;
            continue;
        }
        Jacobian2x4 j = s.jacobian_at(*root);
        if (jacobian_sv_ratio(j) < tol.c_sv_ratio) {
            ++report.nontransverse_samples;
            continue;
        }
        if (!fixed) {
            fixed = reference_normal_frame(j);
            if (!fixed) {
                ++report.nontransverse_samples;
                continue;
            }
        }
        // One axis pair for the whole path so the reference frame varies
        // continuously along it.
        std::array<double, 4> e1{}, e2{};
        e1[fixed->axes[0]] = 1.0;
        e2[fixed->axes[1]] = 1.0;
        int sign = frame_sign(s, j, e1, e2, tol);
        if (sign == 0) {
            ++report.nontransverse_samples;
            continue;
        }
        ++report.transverse_samples;
        report.signs.emplace_back(t, sign);
    }
    if (report.transverse_samples == 0)
        throw Error(ErrorCode::PathTouchesC, "no transverse samples along the path");
    report.sign_start = report.signs.front().second;
    report.sign_end = report.signs.back().second;
    report.flipped = report.sign_start != report.sign_end;
    report.consistent = report.flipped == report.expected_flip;
    return report;
}

// ---------------------------------------------------------------------------
// Parametrized-surface root finding (shared by link checks and pairings)

namespace {

struct SurfaceRoot {
    double u = 0.0, v = 0.0;
    FloatPoint point{};
    int sign = 0;
    bool transverse = false;
};

double surface_residual(const SectionRep& s, const ParamSurface& surf, double u, double v) {
    return s.residual_at(surf.at(u, v));
}

std::vector<SurfaceRoot> find_surface_roots(const SectionRep& s, const ParamSurface& surf,
                                            int grid, const Tolerances& tol) {
    const double hu = (surf.u_max() - surf.u_min()) / grid;
    const double hv = (surf.v_max() - surf.v_min()) / grid;
    const double h_diag = std::hypot(hu, hv);
    const double chart_merge = std::max(1e-9, 1e-6 * surf.extent());

    auto param_jacobian = [&](double u, double v) {
        Jacobian2x4 j = s.jacobian_at(surf.at(u, v));
        auto cu = j.apply(surf.tangent_u(u, v));
        auto cv = j.apply(surf.tangent_v(u, v));
        return std::array<std::array<double, 2>, 2>{cu, cv}; // columns
    };

    std::vector<SurfaceRoot> roots;
    for (int i = 0; i <= grid; ++i) {
        for (int jdx = 0; jdx <= grid; ++jdx) {
            double u = surf.u_min() + hu * i;
            double v = surf.v_min() + hv * jdx;
            FloatPoint x = surf.at(u, v);
            auto nums = s.numerators_at(x);
            auto cols = param_jacobian(u, v);
            bool seed = true;
            for (int c = 0; c < 2 && seed; ++c) {
                double grad = std::hypot(cols[0][c], cols[1][c]);
                if (std::abs(nums[c]) > tol.seed_scale * grad * h_diag) seed = false;
            }
            if (!seed) continue;

            // Damped 2x2 Newton in the parameter plane.
            double pu = u, pv = v;
            double res = surface_residual(s, surf, pu, pv);
            bool converged = false;
            for (int iter = 0; iter < tol.newton_max_iter; ++iter) {
                if (res <= tol.refine_tol) {
                    converged = true;
                    break;
                }
                auto c = param_jacobian(pu, pv);
                double det = c[0][0] * c[1][1] - c[0][1] * c[1][0];
                auto f = s.numerators_at(surf.at(pu, pv));
                if (det == 0.0) break;
                double du = (c[1][1] * f[0] - c[1][0] * f[1]) / det;
                double dv = (-c[0][1] * f[0] + c[0][0] * f[1]) / det;
                double lambda = 1.0;
                bool improved = false;
                for (int halvings = 0; halvings < 24; ++halvings) {
                    double tu = pu - lambda * du;
                    double tv = pv - lambda * dv;
                    double trial = surface_residual(s, surf, tu, tv);
                    if (trial < res) {
                        pu = tu;
                        pv = tv;
                        res = trial;
                        improved = true;
                        break;
                    }
                    lambda *= tol.newton_damping;
                }
                if (!improved) break;
            }
            if (!converged && res > tol.refine_tol) continue;

            SurfaceRoot root;
            root.u = pu;
            root.v = pv;
            root.point = surf.at(pu, pv);
            bool dup = false;
            for (const auto& r : roots) {
                double d = 0.0;
                for (int k = 0; k < 4; ++k) d = std::max(d, std::abs(r.point[k] - root.point[k]));
                if (d <= chart_merge) {
                    dup = true;
                    break;
                }
            }
            if (dup) continue;

            auto c = param_jacobian(pu, pv);
            double det = c[0][0] * c[1][1] - c[0][1] * c[1][0];
            double scale = std::hypot(c[0][0], c[0][1]) * std::hypot(c[1][0], c[1][1]);
            root.transverse = scale > 0.0 && std::abs(det) > 1e-8 * scale;
            root.sign = root.transverse ? sgn(det) * tol.sign_convention : 0;
            roots.push_back(root);
        }
    }
    std::sort(roots.begin(), roots.end(), [](const SurfaceRoot& a, const SurfaceRoot& b) {
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    });
    return roots;
}

} // namespace

LinkReport link_consistency_at(const SectionRep& s, const FloatPoint& c_point, double radius,
                               int grid, const Tolerances& tol) {
    if (s.kind != SectionKind::Delta2)
        throw Error(ErrorCode::InvalidArgument, "link checks use the Delta2 section");
    SectionPair sp = companion_sections(s);
    if (sp.d1.residual_at(c_point) > tol.classify_tol ||
        sp.d2.residual_at(c_point) > tol.classify_tol ||
        jacobian_sv_ratio(sp.d2.jacobian_at(c_point)) >= tol.c_sv_ratio)
        throw Error(ErrorCode::InvalidArgument, "center point is not on C");

    // Tangent of C: kernel direction of the stacked Jacobians of both
    // sections at the center.
    Jacobian2x4 j1 = sp.d1.jacobian_at(c_point);
    Jacobian2x4 j2 = sp.d2.jacobian_at(c_point);
    std::vector<std::array<double, 4>> rows = {j1.rows[0], j1.rows[1], j2.rows[0], j2.rows[1]};
    auto tangent = min_singular_direction(rows);

    // Orthonormal basis of the transverse 3-slice: greedy projections of the
    // coordinate axes, ties to the lower axis.
    std::array<std::array<double, 4>, 3> basis{};
    int picked = 0;
    std::array<bool, 4> used{};
    while (picked < 3) {
        int best_axis = -1;
        double best = -1.0;
        std::array<double, 4> best_w{};
        for (int a = 0; a < 4; ++a) {
            if (used[a]) continue;
            std::array<double, 4> w{};
            w[a] = 1.0;
            double c = dot4(w, tangent);
            for (int k = 0; k < 4; ++k) w[k] -= c * tangent[k];
            for (int b = 0; b < picked; ++b) {
                double cb = dot4(w, basis[b]);
                for (int k = 0; k < 4; ++k) w[k] -= cb * basis[b][k];
            }
            double score = dot4(w, w);
            if (score > best + 1e-15) {
                best = score;
                best_axis = a;
                best_w = w;
            }
        }
        if (best_axis < 0 || best <= 1e-12)
            throw Error(ErrorCode::InvalidArgument, "could not build a transverse slice at C");
        used[best_axis] = true;
        double n = std::sqrt(best);
        for (auto& x : best_w) x /= n;
        basis[picked++] = best_w;
    }

    ParamSurface sphere = ParamSurface::sphere(c_point, radius, basis[0], basis[1], basis[2]);
    auto roots = find_surface_roots(s, sphere, grid, tol);
    if (roots.size() != 4)
        throw Error(ErrorCode::WrongLinkCount,
                    "expected 4 link points, found " + std::to_string(roots.size()) +
                        " (radius too large/small or non-generic model)");
    LinkReport report;
    report.center = c_point;
    report.radius = radius;
    report.c_tangent = tangent;
    for (const auto& r : roots) {
        if (!r.transverse)
            throw Error(ErrorCode::WrongLinkCount, "link point is not transverse; adjust radius");
        report.points.push_back(r.point);
        report.signs.push_back(r.sign);
        report.tags.push_back(classify_point(sp, r.point, tol));
        report.sum += r.sign;
    }
    return report;
}

PairingReport intersect_cycle_report(const SectionRep& s, const ParamSurface& cyc, int grid,
                                     const Tolerances& tol) {
    cyc.verify_closed();
    SectionPair sp = companion_sections(s);

    // Margin checks along the cycle: complement degeneracy and proximity to C.
    const int scan = std::max(grid, 32);
    for (int i = 0; i <= scan; ++i) {
        for (int j = 0; j <= scan; ++j) {
            double u = cyc.u_min() + (cyc.u_max() - cyc.u_min()) * i / scan;
            double v = cyc.v_min() + (cyc.v_max() - cyc.v_min()) * j / scan;
            FloatPoint x = cyc.at(u, v);
            if (std::abs(s.den.evaluate(x)) <= tol.den_margin)
                throw Error(ErrorCode::InvalidArgument,
                            "cycle meets the complement degeneracy set {den = 0}");
            if (sp.d1.residual_at(x) <= tol.classify_tol &&
                sp.d2.residual_at(x) <= tol.classify_tol &&
                jacobian_sv_ratio(sp.d2.jacobian_at(x)) < 1e-3)
                throw Error(ErrorCode::CycleMeetsC, "cycle passes within tolerance of C");
        }
    }

    PairingReport report;
    ParamSurface current = cyc;
    const std::array<double, 4> jitter_dir = {0.76696499, 0.38348250, 0.25565500, 0.19174125};
    const double scale = std::max(cyc.extent(), 1e-6);
    for (int attempt = 0;; ++attempt) {
        auto roots = find_surface_roots(s, current, grid, tol);
        bool all_transverse = true;
        for (const auto& r : roots)
            if (!r.transverse) all_transverse = false;
        if (all_transverse) {
            report.jitter_retries = attempt;
            for (const auto& r : roots) {
                report.crossings.push_back(Crossing{r.u, r.v, r.point, r.sign});
                report.total += r.sign;
            }
            return report;
        }
        if (attempt >= 3)
            throw Error(ErrorCode::NonTransverseIntersection,
                        "tangential intersection persists after jitter retries");
        double eps = std::pow(10.0, attempt - 7) * scale; // 1e-7, 1e-6, 1e-5 of the cycle scale
        FloatPoint offset;
        for (int k = 0; k < 4; ++k) offset[k] = eps * jitter_dir[k];
        current = cyc.translated(offset);
    }
}

int intersect_cycle(const SectionRep& s, const ParamSurface& cyc, int grid, const Tolerances& tol) {
    return intersect_cycle_report(s, cyc, grid, tol).total;
}

std::string locus_samples_to_csv(const std::vector<LocusSample>& samples) {
    std::ostringstream os;
    os.precision(15);
    os << "x1,x2,x3,x4,locus,sign,residual\n";
    for (const auto& s : samples) {
        os << s.point[0] << "," << s.point[1] << "," << s.point[2] << "," << s.point[3] << ","
           << locus_tag_name(s.locus) << ",";
        if (s.coorientation > 0)
            os << "+1";
        else if (s.coorientation < 0)
            os << "-1";
        else
            os << "0";
        os << "," << s.residual << "\n";
    }
    return os.str();
}

std::string locus_samples_to_obj(const std::vector<LocusSample>& samples,
                                 const std::array<int, 3>& axes) {
    std::ostringstream os;
    os.precision(12);
    os << "# point cloud; axes x" << axes[0] << " x" << axes[1] << " x" << axes[2] << "\n";
    for (const auto& s : samples)
        os << "v " << s.point[axes[0] - 1] << " " << s.point[axes[1] - 1] << " "
           << s.point[axes[2] - 1] << "\n";
    return os.str();
}

} // namespace engel
