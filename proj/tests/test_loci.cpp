#include <doctest.h>

#include <cmath>

#include "engel/errors.hpp"
#include "engel/loci.hpp"
#include "test_helpers.hpp"

using namespace engel;
using namespace engel::testing;

namespace {

const double kRefineTol = 1e-10;

SectionRep cform_d1() { return delta1(c_form_frame(), comp(1, 2)); }
SectionRep cform_d2() { return delta2(c_form_frame(), comp(1, 2)); }

std::string sphere_json(double cx, double r, bool reversed = false) {
    std::string sv = reversed ? "sin(0-v)" : "sin(v)";
    std::string cv = reversed ? "cos(0-v)" : "cos(v)";
    std::string c = std::to_string(cx);
    std::string rr = std::to_string(r);
    return std::string("{\"coords\": [\"") + c + " + " + rr + "*sin(u)*" + cv + "\", \"0\", \"" +
           rr + "*sin(u)*" + sv + "\", \"" + rr + "*cos(u)\"], \"u\": [0, \"pi\"], \"v\": [0, \"2*pi\"]}";
}

} // namespace

TEST_CASE("extract_locus: first locus of the C-form") {
    LocusResult res = extract_locus(cform_d1(), Box{}, 9, kRefineTol);
    CHECK(res.samples.size() > 20);
    for (const auto& s : res.samples) {
        CHECK(std::abs(s.point[2]) <= 1e-8);
        CHECK(std::abs(s.point[0] + s.point[3] * s.point[3]) <= 1e-8);
        CHECK(s.residual <= kRefineTol);
    }
}

TEST_CASE("extract_locus: full degeneration set splits into tagged strata") {
    LocusResult res = extract_locus(cform_d2(), Box{}, 9, kRefineTol);
    int n_s1 = 0, n_s2 = 0, n_c = 0;
    for (const auto& s : res.samples) {
        double s1a = std::abs(s.point[2]);
        double s1b = std::abs(s.point[0] + s.point[3] * s.point[3]);
        double s2a = std::abs(2 * s.point[3] + s.point[2] * s.point[2]);
        switch (s.locus) {
            case LocusTag::Sigma1:
                ++n_s1;
                CHECK(s1a <= 1e-6);
                CHECK(s1b <= 1e-6);
                break;
            case LocusTag::Sigma2:
                ++n_s2;
                CHECK(s2a <= 1e-6);
                CHECK(s1b <= 1e-6);
                break;
            case LocusTag::C:
                ++n_c;
                // C is the x2-axis.
                CHECK(std::abs(s.point[0]) <= 1e-4);
                CHECK(std::abs(s.point[2]) <= 1e-4);
                CHECK(std::abs(s.point[3]) <= 1e-4);
                CHECK(s.coorientation == 0);
                break;
        }
    }
    CHECK(n_s1 > 10);
    CHECK(n_s2 > 10);
}

TEST_CASE("extract_locus: empty result for a nowhere-zero section") {
    SectionRep s = delta1(engel_canonical_frame(), comp(2, 3));
    LocusResult res = extract_locus(s, Box{}, 7, kRefineTol);
    CHECK(res.samples.empty());
}

TEST_CASE("co-orientation signs follow the model sign laws") {
    // delta2 on Sigma1 samples: sign proportional to sign(-x4); on Sigma2:
    // sign(-x3). A single global factor is allowed, so compare products.
    LocusResult res = extract_locus(cform_d2(), Box{}, 11, kRefineTol);
    int s1_product = 0, s2_product = 0;
    bool consistent_s1 = true, consistent_s2 = true;
    for (const auto& s : res.samples) {
        if (s.coorientation == 0) continue;
        if (s.locus == LocusTag::Sigma1) {
            // Avoid the reference-axis switching band near |x4| = 1/2.
            if (std::abs(s.point[3]) < 0.05 || std::abs(std::abs(s.point[3]) - 0.5) < 0.05) continue;
            if (std::abs(s.point[3]) > 0.45) continue;
            int expected = s.point[3] < 0 ? +1 : -1;
            int product = s.coorientation * expected;
            if (s1_product == 0)
                s1_product = product;
            else if (product != s1_product)
                consistent_s1 = false;
        } else if (s.locus == LocusTag::Sigma2) {
            if (std::abs(s.point[2]) < 0.05 || std::abs(s.point[2]) > 0.45) continue;
            int expected = s.point[2] < 0 ? +1 : -1;
            int product = s.coorientation * expected;
            if (s2_product == 0)
                s2_product = product;
            else if (product != s2_product)
                consistent_s2 = false;
        }
    }
    CHECK(s1_product != 0);
    CHECK(s2_product != 0);
    CHECK(consistent_s1);
    CHECK(consistent_s2);
}

TEST_CASE("delta1 co-orientation is constant near the origin") {
    LocusResult res = extract_locus(cform_d1(), Box{}, 11, kRefineTol);
    int sign = 0;
    for (const auto& s : res.samples) {
        if (std::abs(s.point[3]) > 0.4) continue; // single axis-pair regime
        REQUIRE(s.coorientation != 0);
        if (sign == 0) sign = s.coorientation;
        CHECK(s.coorientation == sign);
    }
    CHECK(sign != 0);
}

TEST_CASE("co-orientation signs survive seed perturbation") {
    LocusResult res = extract_locus(cform_d2(), Box{}, 9, kRefineTol);
    SectionRep s = cform_d2();
    int checked = 0;
    for (const auto& sample : res.samples) {
        if (sample.coorientation == 0) continue;
        FloatPoint seed = sample.point;
        seed[1] += 0.07;
        seed[0] += 0.05;
        LocusSample redo;
        // Re-refine from the jittered seed using the public surface.
        LocusResult again = extract_locus(
            s, Box{{seed[0] - 0.1, seed[1] - 0.1, seed[2] - 0.1, seed[3] - 0.1},
                   {seed[0] + 0.1, seed[1] + 0.1, seed[2] + 0.1, seed[3] + 0.1}},
            5, kRefineTol);
        for (const auto& near : again.samples) {
            double d = 0.0;
            for (int k = 0; k < 4; ++k) d = std::max(d, std::abs(near.point[k] - sample.point[k]));
            if (d < 0.05 && near.locus == sample.locus && near.coorientation != 0) {
                CHECK(near.coorientation == sample.coorientation);
                ++checked;
                break;
            }
        }
        if (checked > 8) break;
    }
    CHECK(checked > 0);
}

TEST_CASE("refined samples back-substitute exactly within float error") {
    SectionRep s = cform_d2();
    LocusResult res = extract_locus(s, Box{}, 9, kRefineTol);
    int n = 0;
    for (const auto& sample : res.samples) {
        RatPoint p = to_rat_point(sample.point);
        double exact1 = std::abs(to_double(s.num1.evaluate(p)));
        double exact2 = std::abs(to_double(s.num2.evaluate(p)));
        CHECK(exact1 <= 10 * kRefineTol);
        CHECK(exact2 <= 10 * kRefineTol);
        if (++n > 50) break;
    }
}

TEST_CASE("reversal across C on both strata") {
    SectionRep d2 = cform_d2();
    ParamCurve s1_path = ParamCurve::from_exprs("0-t^2,0,0,t", -0.5, 0.5);
    ReversalReport r1 = reversal_check(d2, LocusTag::Sigma1, s1_path);
    CHECK(r1.flipped);
    CHECK(r1.consistent);
    CHECK(r1.sign_start != 0);
    CHECK(r1.sign_start == -r1.sign_end);

    ParamCurve s2_path = ParamCurve::from_exprs("0-t^4/4,0,t,0-t^2/2", -0.5, 0.5);
    ReversalReport r2 = reversal_check(d2, LocusTag::Sigma2, s2_path);
    CHECK(r2.flipped);
    CHECK(r2.consistent);

    // The canonical co-orientation of delta1 does not reverse.
    SectionRep d1 = cform_d1();
    ReversalReport r3 = reversal_check(d1, LocusTag::Sigma1, s1_path);
    CHECK_FALSE(r3.flipped);
    CHECK(r3.consistent);
}

TEST_CASE("reversal rejects bad stratum combinations") {
    SectionRep d1 = cform_d1();
    ParamCurve path = ParamCurve::from_exprs("0-t^2,0,0,t", -0.5, 0.5);
    CHECK_THROWS_AS(reversal_check(d1, LocusTag::Sigma2, path), Error);
    CHECK_THROWS_AS(reversal_check(d1, LocusTag::C, path), Error);
}

TEST_CASE("link consistency at points of C") {
    SectionRep d2 = cform_d2();
    for (double x2 : {0.0, 0.4, -0.7}) {
        for (double radius : {0.3, 0.05}) {
            LinkReport report = link_consistency_at(d2, FloatPoint{0, x2, 0, 0}, radius);
            REQUIRE(report.points.size() == 4);
            CHECK(report.sum == 0);
            int plus = 0, minus = 0, s1 = 0, s2 = 0;
            for (size_t i = 0; i < 4; ++i) {
                if (report.signs[i] > 0) ++plus;
                if (report.signs[i] < 0) ++minus;
                if (report.tags[i] == LocusTag::Sigma1) ++s1;
                if (report.tags[i] == LocusTag::Sigma2) ++s2;
            }
            CHECK(plus == 2);
            CHECK(minus == 2);
            CHECK(s1 == 2);
            CHECK(s2 == 2);
        }
    }
    CHECK_THROWS_AS(link_consistency_at(d2, FloatPoint{0.5, 0, 0, 0}, 0.3), Error);
}

TEST_CASE("sphere missing C meets the locus in cancelling pairs") {
    // Small slice-sphere around a Sigma1 point away from C.
    SectionRep d2 = cform_d2();
    double x4 = 0.4;
    ParamSurface sphere = ParamSurface::sphere(FloatPoint{-x4 * x4, 0.0, 0.0, x4}, 0.05,
                                               {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1});
    PairingReport report = intersect_cycle_report(d2, sphere, 48);
    CHECK(report.total == 0);
    CHECK((report.crossings.size() == 0 || report.crossings.size() == 2));
}

TEST_CASE("cycle pairing: bounding sphere example") {
    ParamSurface cyc = ParamSurface::from_json(sphere_json(-0.25, 0.6));
    cyc.verify_closed();

    PairingReport r1 = intersect_cycle_report(cform_d1(), cyc, 64);
    CHECK(r1.total == 0);
    REQUIRE(r1.crossings.size() == 2);
    double root = std::sqrt(0.35);
    for (const auto& c : r1.crossings) {
        CHECK(std::abs(std::abs(c.point[3]) - root) <= 1e-8);
        CHECK(std::abs(c.point[2]) <= 1e-8);
    }
    CHECK(r1.crossings[0].sign * r1.crossings[1].sign == -1);

    PairingReport r2 = intersect_cycle_report(cform_d2(), cyc, 64);
    CHECK(r2.total == 0);
    CHECK(r2.crossings.size() == 4);
}

TEST_CASE("cycle pairing: orientation reversal negates every crossing") {
    ParamSurface cyc = ParamSurface::from_json(sphere_json(-0.25, 0.6));
    ParamSurface rev = ParamSurface::from_json(sphere_json(-0.25, 0.6, true));
    PairingReport fwd = intersect_cycle_report(cform_d2(), cyc, 64);
    PairingReport bwd = intersect_cycle_report(cform_d2(), rev, 64);
    REQUIRE(fwd.crossings.size() == bwd.crossings.size());
    CHECK(bwd.total == -fwd.total);
    for (const auto& cf : fwd.crossings) {
        bool matched = false;
        for (const auto& cb : bwd.crossings) {
            double d = 0.0;
            for (int k = 0; k < 4; ++k) d = std::max(d, std::abs(cf.point[k] - cb.point[k]));
            if (d < 1e-6) {
                CHECK(cb.sign == -cf.sign);
                matched = true;
            }
        }
        CHECK(matched);
    }
}

TEST_CASE("cycle pairing: empty locus pairs to zero") {
    SectionRep s = delta1(engel_canonical_frame(), comp(2, 3));
    ParamSurface cyc = ParamSurface::from_json(sphere_json(0.0, 0.5));
    PairingReport r = intersect_cycle_report(s, cyc, 32);
    CHECK(r.total == 0);
    CHECK(r.crossings.empty());
}

TEST_CASE("cycle pairing: bounding cycles of varying radii pair to zero") {
    for (double r : {0.31, 0.45, 0.6}) {
        ParamSurface cyc = ParamSurface::from_json(sphere_json(-0.2, r));
        CHECK(intersect_cycle(cform_d2(), cyc, 64) == 0);
        CHECK(intersect_cycle(cform_d1(), cyc, 64) == 0);
    }
}

TEST_CASE("cycle pairing rejects cycles through C") {
    // Sphere centered on C (the x2-axis) passes through it.
    ParamSurface cyc = ParamSurface::sphere(FloatPoint{0, 0, 0, 0}, 0.3, {1, 0, 0, 0},
                                            {0, 1, 0, 0}, {0, 0, 1, 0});
    CHECK_THROWS_AS(intersect_cycle(cform_d2(), cyc, 32), Error);
}

TEST_CASE("open parameter patch is rejected as a cycle") {
    ParamSurface patch(
        {parse_param_expr("u", {"u", "v"}, 2), parse_param_expr("v", {"u", "v"}, 2),
         parse_param_expr("0", {"u", "v"}, 2), parse_param_expr("1", {"u", "v"}, 2)},
        0.0, 1.0, 0.0, 1.0);
    CHECK_THROWS_AS(patch.verify_closed(), Error);
}

TEST_CASE("CSV and OBJ export formats") {
    LocusResult res = extract_locus(cform_d1(), Box{}, 7, kRefineTol);
    std::string csv = locus_samples_to_csv(res.samples);
    CHECK(csv.rfind("x1,x2,x3,x4,locus,sign,residual\n", 0) == 0);
    CHECK(csv.find("S1") != std::string::npos);
    std::string obj = locus_samples_to_obj(res.samples, {1, 3, 4});
    CHECK(obj.find("v ") != std::string::npos);
}
