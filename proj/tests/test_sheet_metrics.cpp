#include "xlsxdiag/sheet_metrics.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace xlsxdiag;

namespace {

SheetMetrics parse_str(const std::string& xml) {
    return parse_sheet_metrics(std::span<const std::uint8_t>(
        reinterpret_cast<const std::uint8_t*>(xml.data()), xml.size()));
}

} // namespace

TEST_CASE("parse_sheet_metrics defaults") {
    SheetMetrics m = parse_str("<worksheet><sheetData/></worksheet>");
    CHECK(m.default_col_width_chars == doctest::Approx(8.43));
    CHECK(m.default_row_height_pt == doctest::Approx(15.0));
    CHECK(m.col_width_overrides.empty());
    CHECK(m.row_height_overrides.empty());
}

TEST_CASE("parse_sheet_metrics expands col ranges") {
    SheetMetrics m = parse_str(
        "<worksheet><cols><col min=\"2\" max=\"4\" width=\"12\" customWidth=\"1\"/></cols>"
        "<sheetData/></worksheet>");
    REQUIRE(m.col_width_overrides.size() == 3);
    for (int c : {1, 2, 3})
        CHECK(m.col_width_overrides.at(c) == doctest::Approx(12.0));
}

TEST_CASE("parse_sheet_metrics captures custom row heights") {
    SheetMetrics m = parse_str(
        "<worksheet><sheetData><row r=\"3\" ht=\"30\" customHeight=\"1\"/></sheetData>"
        "</worksheet>");
    REQUIRE(m.row_height_overrides.size() == 1);
    CHECK(m.row_height_overrides.at(2) == doctest::Approx(30.0));
}

TEST_CASE("parse_sheet_metrics: hidden columns and rows contribute zero") {
    SheetMetrics m = parse_str(
        "<worksheet><cols><col min=\"1\" max=\"1\" width=\"9\" hidden=\"1\"/></cols>"
        "<sheetData><row r=\"1\" hidden=\"1\"/></sheetData></worksheet>");
    CHECK(col_width_emu(m, 0) == 0);
    CHECK(row_height_emu(m, 0) == 0);
}

TEST_CASE("col_width_emu follows the declared pixel formula") {
    SheetMetrics m;

    // Expected values evaluated by the independent formula oracle.
    CHECK(col_width_emu(m, 0) == oracles::col_width_formula(8.43, 7));
    CHECK(col_width_emu(m, 0) == 561975); // 59 px

    m.col_width_overrides[3] = 12.0;
    CHECK(col_width_emu(m, 3) == oracles::col_width_formula(12.0, 7));
    CHECK(col_width_emu(m, 3) == 800100); // floor(((3072+18)/256)*7) = 84 px

    m.col_width_overrides[4] = 0.0;
    CHECK(col_width_emu(m, 4) == oracles::col_width_formula(0.0, 7));
    CHECK(col_width_emu(m, 4) == 0);
}

TEST_CASE("row_height_emu") {
    SheetMetrics m;
    CHECK(row_height_emu(m, 0) == 190500); // 15 pt
    m.row_height_overrides[2] = 0.0;       // hidden row
    CHECK(row_height_emu(m, 2) == 0);
    m.row_height_overrides[3] = 30.0;
    CHECK(row_height_emu(m, 3) == 381000);
}

TEST_CASE("resolve_anchor: same-cell offsets") {
    SheetMetrics m;
    AnchorSpec anchor;
    anchor.kind = AnchorSpec::Kind::twoCell;
    anchor.from = {0, 0, 0, 0};
    anchor.to = CellOffset{0, 0, 914400, 914400};
    DiagnosticList diags;
    FrameEmu f = resolve_anchor(m, anchor, diags);
    CHECK(f.x == 0);
    CHECK(f.y == 0);
    CHECK(f.cx == 914400);
    CHECK(f.cy == 914400);
    CHECK(diags.empty());
}

TEST_CASE("resolve_anchor: from cell (1,0) offsets by the first column width") {
    SheetMetrics m;
    AnchorSpec anchor;
    anchor.kind = AnchorSpec::Kind::oneCell;
    anchor.from = {1, 0, 0, 0};
    anchor.ext_cx = 100;
    anchor.ext_cy = 100;
    DiagnosticList diags;
    FrameEmu f = resolve_anchor(m, anchor, diags);
    CHECK(f.x == oracles::col_width_formula(8.43, 7));
    CHECK(f.x == 561975);
    CHECK(f.y == 0);
}

TEST_CASE("resolve_anchor: absolute passes through") {
    SheetMetrics m;
    AnchorSpec anchor;
    anchor.kind = AnchorSpec::Kind::absolute;
    anchor.pos_x = 1234;
    anchor.pos_y = 5678;
    anchor.ext_cx = 1000;
    anchor.ext_cy = 2000;
    DiagnosticList diags;
    FrameEmu f = resolve_anchor(m, anchor, diags);
    CHECK(f.x == 1234);
    CHECK(f.y == 5678);
    CHECK(f.cx == 1000);
    CHECK(f.cy == 2000);
}

TEST_CASE("resolve_anchor: reversed to/from clamps with a diagnostic") {
    SheetMetrics m;
    AnchorSpec anchor;
    anchor.kind = AnchorSpec::Kind::twoCell;
    anchor.from = {2, 2, 0, 0};
    anchor.to = CellOffset{0, 0, 0, 0};
    DiagnosticList diags;
    FrameEmu f = resolve_anchor(m, anchor, diags);
    CHECK(f.cx == 0);
    CHECK(f.cy == 0);
    REQUIRE_FALSE(diags.empty());
    CHECK(diags[0].code == "negative_extent");
}

TEST_CASE("origin monotonicity and additivity") {
    SheetMetrics m;
    m.col_width_overrides = {{2, 20.0}, {3, 0.0}, {5, 3.5}};
    m.row_height_overrides = {{1, 0.0}, {4, 42.5}};
    for (int c = 0; c < 10; ++c) {
        CHECK(col_origin_emu(m, c) <= col_origin_emu(m, c + 1));
        CHECK(col_origin_emu(m, c + 1) - col_origin_emu(m, c) == col_width_emu(m, c));
    }
    for (int r = 0; r < 10; ++r) {
        CHECK(row_origin_emu(m, r) <= row_origin_emu(m, r + 1));
        CHECK(row_origin_emu(m, r + 1) - row_origin_emu(m, r) == row_height_emu(m, r));
    }
}

TEST_CASE("resolve_anchor agrees with the naive cumulative-sum oracle") {
    std::mt19937 rng(987654);
    auto rand_int = [&](int lo, int hi) {
        return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
    };
    auto rand_width = [&] { return (rng() % 320) / 10.0; };

    for (int i = 0; i < 200; ++i) {
        SheetMetrics m;
        m.default_col_width_chars = rand_width();
        m.default_row_height_pt = (rng() % 600) / 10.0;
        int overrides = rand_int(0, 6);
        for (int k = 0; k < overrides; ++k)
            m.col_width_overrides[rand_int(0, 12)] = rand_width();
        for (int k = 0; k < overrides; ++k)
            m.row_height_overrides[rand_int(0, 12)] = (rng() % 500) / 10.0;

        AnchorSpec anchor;
        int which = rand_int(0, 2);
        anchor.from = {rand_int(0, 10), rand_int(0, 10), rand_int(0, 500000),
                       rand_int(0, 500000)};
        if (which == 0) {
            anchor.kind = AnchorSpec::Kind::twoCell;
            anchor.to = CellOffset{rand_int(0, 10), rand_int(0, 10), rand_int(0, 500000),
                                   rand_int(0, 500000)};
        } else if (which == 1) {
            anchor.kind = AnchorSpec::Kind::oneCell;
            anchor.ext_cx = rand_int(0, 2000000);
            anchor.ext_cy = rand_int(0, 2000000);
        } else {
            anchor.kind = AnchorSpec::Kind::absolute;
            anchor.pos_x = rand_int(0, 2000000);
            anchor.pos_y = rand_int(0, 2000000);
            anchor.ext_cx = rand_int(0, 2000000);
            anchor.ext_cy = rand_int(0, 2000000);
        }

        DiagnosticList diags;
        FrameEmu got = resolve_anchor(m, anchor, diags);
        FrameEmu want = oracles::resolve_anchor_naive(m, anchor);
        CAPTURE(i);
        CHECK(got.x == want.x);
        CHECK(got.y == want.y);
        CHECK(got.cx == want.cx);
        CHECK(got.cy == want.cy);
    }
}
