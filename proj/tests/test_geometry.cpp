#include "xlsxdiag/geometry.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

using namespace xlsxdiag;

namespace {

constexpr double kPtEps = 1e-6;

XfrmSpec group_xfrm(Emu off_x, Emu off_y, Emu ext_cx, Emu ext_cy, Emu ch_off_x, Emu ch_off_y,
                    Emu ch_ext_cx, Emu ch_ext_cy, double rot_deg = 0, bool fh = false,
                    bool fv = false) {
    XfrmSpec x;
    x.off_x = off_x;
    x.off_y = off_y;
    x.ext_cx = ext_cx;
    x.ext_cy = ext_cy;
    x.ch_off_x = ch_off_x;
    x.ch_off_y = ch_off_y;
    x.ch_ext_cx = ch_ext_cx;
    x.ch_ext_cy = ch_ext_cy;
    x.rot = normalize_angle(static_cast<std::int64_t>(std::llround(rot_deg * kAnglePerDegree)));
    x.flip_h = fh;
    x.flip_v = fv;
    return x;
}

Placed placed(double x, double y, double cx, double cy, double rot_deg = 0, bool fh = false,
              bool fv = false) {
    Placed p;
    p.frame = {x, y, cx, cy};
    p.rot = normalize_angle(static_cast<std::int64_t>(std::llround(rot_deg * kAnglePerDegree)));
    p.flip_h = fh;
    p.flip_v = fv;
    return p;
}

// Corners of a placed frame after its rotation, sorted for set comparison.
std::array<oracles::Pt2, 4> placed_corners(const Placed& p) {
    double rad = static_cast<double>(p.rot) / kAnglePerDegree * 3.14159265358979323846 / 180.0;
    double cx = p.frame.x + p.frame.cx / 2.0;
    double cy = p.frame.y + p.frame.cy / 2.0;
    std::array<oracles::Pt2, 4> pts = {
        oracles::Pt2{p.frame.x, p.frame.y},
        oracles::Pt2{p.frame.x + p.frame.cx, p.frame.y},
        oracles::Pt2{p.frame.x + p.frame.cx, p.frame.y + p.frame.cy},
        oracles::Pt2{p.frame.x, p.frame.y + p.frame.cy}};
    for (auto& pt : pts) {
        double dx = pt.x - cx, dy = pt.y - cy;
        pt = {cx + dx * std::cos(rad) - dy * std::sin(rad),
              cy + dx * std::sin(rad) + dy * std::cos(rad)};
    }
    return pts;
}

// Compares a flatten result against the corner oracle, in points. Flips
// permute corner identities, so corners pair by nearest match.
void check_against_corner_oracle(const Placed& got,
                                 const std::vector<oracles::GroupSpec>& groups, double child_x,
                                 double child_y, double child_w, double child_h,
                                 double child_rot_deg, double eps_pt = kPtEps) {
    auto want = oracles::child_corners_through_groups(groups, child_x, child_y, child_w, child_h,
                                                      child_rot_deg);
    auto have = placed_corners(got);
    bool used[4] = {false, false, false, false};
    for (const auto& w : want) {
        int best = -1;
        double best_d = 0;
        for (int i = 0; i < 4; ++i) {
            if (used[i])
                continue;
            double d = std::hypot(w.x - have[i].x, w.y - have[i].y);
            if (best < 0 || d < best_d) {
                best = i;
                best_d = d;
            }
        }
        REQUIRE(best >= 0);
        used[best] = true;
        CHECK(best_d / kEmuPerPoint <= eps_pt);
    }
}

std::vector<PtPoint> path_points(const FrameF& frame, const char* preset, double rot_deg,
                                 bool fh, bool fv, std::vector<Adjustment> adjs = {}) {
    DiagnosticList diags;
    auto rot = normalize_angle(static_cast<std::int64_t>(std::llround(rot_deg * kAnglePerDegree)));
    return connector_path(frame, preset, rot, fh, fv, adjs, diags).points;
}

FrameF frame_pt(double x, double y, double cx, double cy) {
    return {x * kEmuPerPoint, y * kEmuPerPoint, cx * kEmuPerPoint, cy * kEmuPerPoint};
}

void check_path(const std::vector<PtPoint>& got, const std::vector<PtPoint>& want,
                double eps = 1e-9) {
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(std::fabs(got[i].x - want[i].x) <= eps);
        CHECK(std::fabs(got[i].y - want[i].y) <= eps);
    }
}

} // namespace

TEST_CASE("flatten_group: identity group leaves the child unchanged") {
    auto parent = group_xfrm(1000, 2000, 5000, 6000, 1000, 2000, 5000, 6000);
    auto child = placed(1500, 2500, 800, 900, 30.0, true, false);
    auto out = flatten_group(parent, child);
    REQUIRE(out.has_value());
    CHECK(out->frame.x == doctest::Approx(1500));
    CHECK(out->frame.y == doctest::Approx(2500));
    CHECK(out->frame.cx == doctest::Approx(800));
    CHECK(out->frame.cy == doctest::Approx(900));
    CHECK(out->rot == child.rot);
    CHECK(out->flip_h == child.flip_h);
    CHECK(out->flip_v == child.flip_v);
}

TEST_CASE("flatten_group: pure x2 scale") {
    auto parent = group_xfrm(0, 0, 200, 200, 0, 0, 100, 100);
    auto child = placed(10, 10, 20, 20);
    auto out = flatten_group(parent, child);
    REQUIRE(out.has_value());
    CHECK(out->frame.x == doctest::Approx(20));
    CHECK(out->frame.y == doctest::Approx(20));
    CHECK(out->frame.cx == doctest::Approx(40));
    CHECK(out->frame.cy == doctest::Approx(40));
}

TEST_CASE("flatten_group: parent flip_h mirrors position and toggles the child flip") {
    // Child occupies the left third of the child space.
    auto parent = group_xfrm(0, 0, 300, 100, 0, 0, 300, 100, 0, true, false);
    auto child = placed(0, 0, 100, 100);
    auto out = flatten_group(parent, child);
    REQUIRE(out.has_value());
    CHECK(out->frame.x == doctest::Approx(200)); // reflected to the right third
    CHECK(out->flip_h);

    std::vector<oracles::GroupSpec> groups = {
        {0, 0, 300, 100, 0, 0, 300, 100, 0, true, false}};
    check_against_corner_oracle(*out, groups, 0, 0, 100, 100, 0);
}

TEST_CASE("flatten_group: degenerate child space is rejected") {
    auto parent = group_xfrm(0, 0, 100, 100, 0, 0, 0, 0);
    CHECK_FALSE(flatten_group(parent, placed(0, 0, 10, 10)).has_value());
}

TEST_CASE("flatten_group matches the corner-affine oracle on randomized nested groups") {
    std::mt19937 rng(777);
    auto uniform = [&](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() % 100000) / 100000.0);
    };

    for (int iter = 0; iter < 200; ++iter) {
        int depth = 1 + static_cast<int>(rng() % 3);
        // Representable class: either uniform scaling with arbitrary child
        // rotation, or unrotated children under nonuniform scaling.
        bool uniform_scale = rng() % 2 == 0;
        // Quantize every angle to the 1/60000-degree grid the xfrm stores,
        // so oracle and implementation consume identical rotations.
        auto quantize_deg = [](double deg) {
            return static_cast<double>(std::llround(deg * kAnglePerDegree)) / kAnglePerDegree;
        };
        double child_rot = uniform_scale ? quantize_deg(uniform(0, 360)) : 0.0;

        std::vector<oracles::GroupSpec> groups;
        std::vector<XfrmSpec> xfrms;
        for (int d = 0; d < depth; ++d) {
            oracles::GroupSpec g;
            if (uniform_scale) {
                // Quarter-step scale over extents divisible by 4 keeps
                // sx == sy exact in integer EMU.
                double ch_w = 4.0 * std::floor(uniform(1250, 5000));
                double ch_h = 4.0 * std::floor(uniform(1250, 5000));
                double quarters = static_cast<double>(2 + rng() % 9); // 0.5x .. 2.5x
                g.ch_ext_cx = ch_w;
                g.ch_ext_cy = ch_h;
                g.ext_cx = ch_w * quarters / 4.0;
                g.ext_cy = ch_h * quarters / 4.0;
                g.rot_deg = quantize_deg(uniform(0, 360));
            } else {
                g.ch_ext_cx = std::floor(uniform(5000, 20000));
                g.ch_ext_cy = std::floor(uniform(5000, 20000));
                g.ext_cx = std::floor(g.ch_ext_cx * uniform(0.4, 2.5));
                g.ext_cy = std::floor(g.ch_ext_cy * uniform(0.4, 2.5));
                g.rot_deg = 0.0;
            }
            g.off_x = std::floor(uniform(-20000, 20000));
            g.off_y = std::floor(uniform(-20000, 20000));
            g.ch_off_x = std::floor(uniform(-5000, 5000));
            g.ch_off_y = std::floor(uniform(-5000, 5000));
            g.flip_h = rng() % 2 == 0;
            g.flip_v = rng() % 2 == 0;
            groups.push_back(g);
            xfrms.push_back(group_xfrm(
                static_cast<Emu>(g.off_x), static_cast<Emu>(g.off_y),
                static_cast<Emu>(g.ext_cx), static_cast<Emu>(g.ext_cy),
                static_cast<Emu>(g.ch_off_x), static_cast<Emu>(g.ch_off_y),
                static_cast<Emu>(g.ch_ext_cx), static_cast<Emu>(g.ch_ext_cy), g.rot_deg,
                g.flip_h, g.flip_v));
        }

        double child_x = std::floor(uniform(-2000, 8000));
        double child_y = std::floor(uniform(-2000, 8000));
        double child_w = std::floor(uniform(100, 8000));
        double child_h = std::floor(uniform(100, 8000));

        Placed current = placed(child_x, child_y, child_w, child_h, child_rot);
        // Innermost group applies first.
        for (auto it = xfrms.rbegin(); it != xfrms.rend(); ++it) {
            auto next = flatten_group(*it, current);
            REQUIRE(next.has_value());
            current = *next;
        }
        CAPTURE(iter);
        check_against_corner_oracle(current, groups, child_x, child_y, child_w, child_h,
                                    child_rot);
    }
}

TEST_CASE("rendered_bbox: no rotation returns the frame in points") {
    BBox b = rendered_bbox(frame_pt(10, 20, 100, 50), 0, false, false);
    CHECK(b.left == doctest::Approx(10));
    CHECK(b.right == doctest::Approx(110));
    CHECK(b.top == doctest::Approx(20));
    CHECK(b.bottom == doctest::Approx(70));
}

TEST_CASE("rendered_bbox: 90 degrees swaps extents about the same center") {
    BBox b = rendered_bbox(frame_pt(0, 0, 200, 100), 90 * kAnglePerDegree, false, false);
    CHECK(b.left == doctest::Approx(50));
    CHECK(b.right == doctest::Approx(150));
    CHECK(b.top == doctest::Approx(-50));
    CHECK(b.bottom == doctest::Approx(150));
}

TEST_CASE("rendered_bbox: flips never change the envelope") {
    BBox plain = rendered_bbox(frame_pt(5, 5, 70, 30), 0, false, false);
    BBox flipped = rendered_bbox(frame_pt(5, 5, 70, 30), 0, true, true);
    CHECK(plain.left == flipped.left);
    CHECK(plain.right == flipped.right);
    CHECK(plain.top == flipped.top);
    CHECK(plain.bottom == flipped.bottom);
}

TEST_CASE("rendered_bbox: 30 degrees matches the corner-rotation oracle") {
    const double w = 100, h = 50;
    BBox b = rendered_bbox(frame_pt(0, 0, w, h), 30 * kAnglePerDegree, false, false);

    // Oracle: rotate the four corners about the center, take the envelope.
    const double rad = 30.0 * 3.14159265358979323846 / 180.0;
    double cx = w / 2, cy = h / 2;
    double min_x = 1e18, max_x = -1e18, min_y = 1e18, max_y = -1e18;
    const double corners[4][2] = {{0, 0}, {w, 0}, {w, h}, {0, h}};
    for (const auto& c : corners) {
        double dx = c[0] - cx, dy = c[1] - cy;
        double x = cx + dx * std::cos(rad) - dy * std::sin(rad);
        double y = cy + dx * std::sin(rad) + dy * std::cos(rad);
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        min_y = std::min(min_y, y);
        max_y = std::max(max_y, y);
    }
    CHECK(b.left == doctest::Approx(min_x).epsilon(1e-9));
    CHECK(b.right == doctest::Approx(max_x).epsilon(1e-9));
    CHECK(b.top == doctest::Approx(min_y).epsilon(1e-9));
    CHECK(b.bottom == doctest::Approx(max_y).epsilon(1e-9));
}

TEST_CASE("connector_path: straight connector over a degenerate-height frame") {
    auto pts = path_points(frame_pt(0, 0, 100, 0), "straightConnector1", 0, false, false);
    check_path(pts, {{0, 0}, {100, 0}});
}

TEST_CASE("connector_path: flip_v mirrors the diagonal") {
    auto pts = path_points(frame_pt(0, 0, 100, 50), "straightConnector1", 0, false, true);
    check_path(pts, {{0, 50}, {100, 0}});
}

TEST_CASE("connector_path: bentConnector3 with the default adjustment") {
    auto pts = path_points(frame_pt(0, 0, 100, 60), "bentConnector3", 0, false, false,
                           {{"adj1", 50000}});
    check_path(pts, {{0, 0}, {50, 0}, {50, 60}, {100, 60}});
}

TEST_CASE("connector_path: bentConnector3 honors a non-default adjustment") {
    auto pts = path_points(frame_pt(0, 0, 100, 60), "bentConnector3", 0, false, false,
                           {{"adj1", 25000}});
    check_path(pts, {{0, 0}, {25, 0}, {25, 60}, {100, 60}});
}

TEST_CASE("connector_path: bentConnector2, 4 and 5 point enumerations") {
    check_path(path_points(frame_pt(0, 0, 80, 40), "bentConnector2", 0, false, false),
               {{0, 0}, {80, 0}, {80, 40}});
    check_path(path_points(frame_pt(0, 0, 100, 60), "bentConnector4", 0, false, false,
                           {{"adj1", 50000}, {"adj2", 50000}}),
               {{0, 0}, {50, 0}, {50, 30}, {100, 30}, {100, 60}});
    check_path(path_points(frame_pt(0, 0, 100, 60), "bentConnector5", 0, false, false,
                           {{"adj1", 25000}, {"adj2", 50000}, {"adj3", 75000}}),
               {{0, 0}, {25, 0}, {25, 30}, {75, 30}, {75, 60}, {100, 60}});
}

TEST_CASE("connector_path: unsupported preset falls back to a straight segment") {
    DiagnosticList diags;
    auto path = connector_path(frame_pt(0, 0, 100, 50), "curvedConnector3", 0, false, false, {},
                               diags);
    REQUIRE(path.points.size() == 2);
    CHECK(path.points[0].x == doctest::Approx(0));
    CHECK(path.points[1].x == doctest::Approx(100));
    REQUIRE_FALSE(diags.empty());
    CHECK(diags[0].code == "unsupported_preset");
}

TEST_CASE("connector_path: zero-extent collapses duplicate bends") {
    auto pts = path_points(frame_pt(0, 0, 100, 0), "bentConnector3", 0, false, false);
    // The elbow degenerates; consecutive duplicates are removed.
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        CHECK((pts[i].x != pts[i + 1].x || pts[i].y != pts[i + 1].y));
}

TEST_CASE("endpoint_direction basics") {
    DiagnosticList diags;
    std::vector<PtPoint> horizontal = {{0, 0}, {100, 0}};
    CHECK(endpoint_direction(horizontal, PathEnd::start, diags) == CardinalDirection::W);
    CHECK(endpoint_direction(horizontal, PathEnd::end, diags) == CardinalDirection::E);

    std::vector<PtPoint> bent = {{0, 0}, {50, 0}, {50, 60}, {100, 60}};
    CHECK(endpoint_direction(bent, PathEnd::start, diags) == CardinalDirection::W);
    CHECK(endpoint_direction(bent, PathEnd::end, diags) == CardinalDirection::E);

    // 45 degree tie breaks toward the horizontal cardinal.
    std::vector<PtPoint> diag45 = {{0, 0}, {10, 10}};
    CHECK(endpoint_direction(diag45, PathEnd::end, diags) == CardinalDirection::E);
    CHECK(endpoint_direction(diag45, PathEnd::start, diags) == CardinalDirection::W);
    CHECK(diags.empty());

    std::vector<PtPoint> degenerate = {{5, 5}, {5, 5}};
    CHECK(endpoint_direction(degenerate, PathEnd::end, diags) == CardinalDirection::E);
    REQUIRE_FALSE(diags.empty());
    CHECK(diags[0].code == "degenerate_path");
}

TEST_CASE("quantization agrees with the nearest-cardinal oracle at every degree") {
    for (int deg = 0; deg < 360; ++deg) {
        auto [dx, dy] = oracles::angle_vector(deg);
        CAPTURE(deg);
        CHECK(quantize_cardinal(dx, dy) == oracles::nearest_cardinal_by_angle(deg));
    }
}

TEST_CASE("start_dir is the opposite quantization of the first travel vector") {
    std::mt19937 rng(1234);
    DiagnosticList diags;
    auto opposite = [](CardinalDirection d) {
        switch (d) {
        case CardinalDirection::N: return CardinalDirection::S;
        case CardinalDirection::S: return CardinalDirection::N;
        case CardinalDirection::E: return CardinalDirection::W;
        case CardinalDirection::W: return CardinalDirection::E;
        }
        return CardinalDirection::E;
    };
    for (int i = 0; i < 200; ++i) {
        std::vector<PtPoint> pts;
        int n = 2 + static_cast<int>(rng() % 4);
        double x = 0, y = 0;
        pts.push_back({x, y});
        for (int k = 1; k < n; ++k) {
            x += static_cast<double>(static_cast<int>(rng() % 201) - 100);
            y += static_cast<double>(static_cast<int>(rng() % 201) - 100);
            pts.push_back({x, y});
        }
        if (pts[0].x == pts[1].x && pts[0].y == pts[1].y)
            continue;
        double fdx = pts[1].x - pts[0].x, fdy = pts[1].y - pts[0].y;
        double ldx = pts[n - 1].x - pts[n - 2].x, ldy = pts[n - 1].y - pts[n - 2].y;
        if (ldx == 0 && ldy == 0)
            continue;
        CHECK(endpoint_direction(pts, PathEnd::start, diags) ==
              opposite(quantize_cardinal(fdx, fdy)));
        CHECK(endpoint_direction(pts, PathEnd::end, diags) == quantize_cardinal(ldx, ldy));
    }
}

TEST_CASE("flip involution and rotation composition on randomized connectors") {
    std::mt19937 rng(5150);
    const char* presets[] = {"straightConnector1", "bentConnector2", "bentConnector3",
                             "bentConnector4", "bentConnector5"};
    for (int i = 0; i < 500; ++i) {
        FrameF f{static_cast<double>(static_cast<int>(rng() % 2000000) - 1000000),
                 static_cast<double>(static_cast<int>(rng() % 2000000) - 1000000),
                 static_cast<double>(1000 + rng() % 2000000),
                 static_cast<double>(1000 + rng() % 2000000)};
        const char* preset = presets[rng() % 5];
        std::vector<Adjustment> adjs = {{"adj1", static_cast<int>(rng() % 100001)},
                                        {"adj2", static_cast<int>(rng() % 100001)},
                                        {"adj3", static_cast<int>(rng() % 100001)}};
        bool fh = rng() % 2 == 0;
        bool fv = rng() % 2 == 0;

        // Involution: toggling a flip twice returns the original path.
        auto base = path_points(f, preset, 0, fh, fv, adjs);
        auto once = path_points(f, preset, 0, !fh, fv, adjs);
        auto twice = path_points(f, preset, 0, fh, fv, adjs);
        REQUIRE(base.size() == twice.size());
        for (std::size_t k = 0; k < base.size(); ++k) {
            CHECK(std::fabs(base[k].x - twice[k].x) <= kPtEps);
            CHECK(std::fabs(base[k].y - twice[k].y) <= kPtEps);
        }
        // And the single toggle is an exact mirror within the frame.
        REQUIRE(base.size() == once.size());
        double left_pt = f.x / kEmuPerPoint, right_pt = (f.x + f.cx) / kEmuPerPoint;
        for (std::size_t k = 0; k < base.size(); ++k) {
            CHECK(std::fabs((left_pt + right_pt - once[k].x) - base[k].x) <= kPtEps);
            CHECK(std::fabs(once[k].y - base[k].y) <= kPtEps);
        }

        // Rotation composition: rotating the rot-θ path back by -θ about
        // the frame center reproduces the rot-0 path.
        double theta_deg = static_cast<double>(rng() % 36000) / 100.0;
        auto rotated = path_points(f, preset, theta_deg, fh, fv, adjs);
        double rad = -theta_deg * 3.14159265358979323846 / 180.0;
        double cx = (f.x + f.cx / 2.0) / kEmuPerPoint;
        double cy = (f.y + f.cy / 2.0) / kEmuPerPoint;
        REQUIRE(base.size() == rotated.size());
        for (std::size_t k = 0; k < base.size(); ++k) {
            double dx = rotated[k].x - cx, dy = rotated[k].y - cy;
            double bx = cx + dx * std::cos(rad) - dy * std::sin(rad);
            double by = cy + dx * std::sin(rad) + dy * std::cos(rad);
            CHECK(std::fabs(bx - base[k].x) <= 1e-6);
            CHECK(std::fabs(by - base[k].y) <= 1e-6);
        }
    }
}
