#include "xlsxdiag/drawingml.hpp"

#include "xlsxdiag/fixture_forge.hpp"
#include "xlsxdiag/opc_package.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace xlsxdiag;
using testsupport::TempDir;

namespace {

std::vector<RawAnchoredObject> parse_str(const std::string& xml, DiagnosticList& diags) {
    return parse_drawing(std::span<const std::uint8_t>(
                             reinterpret_cast<const std::uint8_t*>(xml.data()), xml.size()),
                         diags);
}

constexpr const char* kWsDrOpen =
    "<xdr:wsDr xmlns:xdr=\"http://schemas.openxmlformats.org/drawingml/2006/spreadsheetDrawing\" "
    "xmlns:a=\"http://schemas.openxmlformats.org/drawingml/2006/main\">";

std::vector<RawAnchoredObject> parse_fixture_drawing(const std::string& manifest_json,
                                                     DiagnosticList& diags) {
    auto manifest = forge::FixtureManifest::parse(manifest_json);
    auto bytes = forge::forge(manifest);
    PackageHandle pkg = PackageHandle::from_bytes(std::move(bytes), diags);
    return parse_drawing(pkg.part("xl/drawings/drawing1.xml"), diags);
}

} // namespace

TEST_CASE("parse_drawing: one rect and one straight connector") {
    DiagnosticList diags;
    auto objects = parse_fixture_drawing(R"({
      "sheets": [{"objects": [
        {"kind": "rect", "frame": [10, 10, 100, 50]},
        {"kind": "straightConnector1", "frame": [110, 35, 60, 0]}
      ]}]})", diags);

    REQUIRE(objects.size() == 2);
    CHECK(objects[0].doc_order == 0);
    CHECK(objects[1].doc_order == 1);
    CHECK(std::holds_alternative<RawShape>(objects[0].body.value));
    CHECK(std::holds_alternative<RawConnector>(objects[1].body.value));
    CHECK(objects[0].anchor.kind == AnchorSpec::Kind::twoCell);
    CHECK(diags.empty());
}

TEST_CASE("parse_drawing: picture-only drawing yields nothing plus a skip diagnostic") {
    DiagnosticList diags;
    auto objects = parse_fixture_drawing(R"({
      "sheets": [{"objects": [{"kind": "picture", "frame": [0, 0, 50, 50]}]}]})", diags);
    CHECK(objects.empty());
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].code == "skipped_object");
}

TEST_CASE("parse_drawing: fig2 reconstruction matches the manifest object count") {
    DiagnosticList diags;
    auto objects = parse_fixture_drawing(testsupport::load_manifest_text("fig2.json"), diags);
    CHECK(objects.size() == 34); // 26 shapes + 8 connectors
    CHECK(diags.empty());
}

TEST_CASE("parse_drawing: unknown anchor element is diagnosed and skipped") {
    DiagnosticList diags;
    std::string xml = std::string(kWsDrOpen) + "<xdr:futureAnchor/></xdr:wsDr>";
    auto objects = parse_str(xml, diags);
    CHECK(objects.empty());
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].code == "unknown_anchor");
}

TEST_CASE("parse_drawing: malformed XML throws") {
    DiagnosticList diags;
    CHECK_THROWS_AS(parse_str("<xdr:wsDr><unclosed>", diags), MalformedXmlError);
}

TEST_CASE("parse_drawing: namespace mismatch warns but parses") {
    DiagnosticList diags;
    std::string xml =
        "<w:wsDr xmlns:w=\"urn:something-else\">"
        "<w:twoCellAnchor><w:from><w:col>0</w:col><w:colOff>0</w:colOff>"
        "<w:row>0</w:row><w:rowOff>0</w:rowOff></w:from>"
        "<w:to><w:col>1</w:col><w:colOff>0</w:colOff><w:row>1</w:row><w:rowOff>0</w:rowOff></w:to>"
        "<w:sp><w:spPr><w:prstGeom prst=\"rect\"/></w:spPr></w:sp>"
        "</w:twoCellAnchor></w:wsDr>";
    auto objects = parse_str(xml, diags);
    CHECK(objects.size() == 1);
    CHECK(std::any_of(diags.begin(), diags.end(),
                      [](const Diagnostic& d) { return d.code == "namespace_mismatch"; }));
}

TEST_CASE("classify_object") {
    RawShape round_rect;
    round_rect.preset = "roundRect";
    CHECK(classify_shape(round_rect) == ObjectKind::roundRectangle);

    RawShape text_box;
    text_box.preset = "rect";
    text_box.is_text_box = true;
    CHECK(classify_shape(text_box) == ObjectKind::textBox);

    RawShape plain;
    plain.preset = "rect";
    CHECK(classify_shape(plain) == ObjectKind::rectangle);

    RawShape ellipse;
    ellipse.preset = "ellipse";
    CHECK(classify_shape(ellipse) == ObjectKind::unsupported);

    RawConnector bent;
    bent.preset = "bentConnector3";
    CHECK(classify_connector(bent) == ObjectKind::bentConnector);
    bent.preset = "bentConnector5";
    CHECK(classify_connector(bent) == ObjectKind::bentConnector);

    RawConnector straight;
    straight.preset = "straightConnector1";
    CHECK(classify_connector(straight) == ObjectKind::straightConnector);
    straight.preset = "line";
    CHECK(classify_connector(straight) == ObjectKind::straightConnector);

    RawConnector curved;
    curved.preset = "curvedConnector3";
    CHECK(classify_connector(curved) == ObjectKind::unsupported);
}

TEST_CASE("extract_text") {
    auto text_of = [](const std::string& body_xml) {
        auto root = xml::parse(body_xml);
        return extract_text(*root);
    };

    SUBCASE("runs concatenate within a paragraph") {
        CHECK(text_of("<txBody><a:p xmlns:a=\"x\"><a:r><a:t>Azure </a:t></a:r>"
                      "<a:r><a:t>App Service</a:t></a:r></a:p></txBody>") ==
              "Azure App Service");
    }
    SUBCASE("paragraphs join with newline") {
        CHECK(text_of("<txBody><a:p xmlns:a=\"x\"><a:r><a:t>line1</a:t></a:r></a:p>"
                      "<a:p xmlns:a=\"x\"><a:r><a:t>line2</a:t></a:r></a:p></txBody>") ==
              "line1\nline2");
    }
    SUBCASE("empty body") { CHECK(text_of("<txBody/>").empty()); }
}

TEST_CASE("parse_drawing is deterministic and doc_order is a permutation") {
    DiagnosticList d1, d2;
    std::string manifest_text = testsupport::load_manifest_text("fig2.json");
    auto a = parse_fixture_drawing(manifest_text, d1);
    auto b = parse_fixture_drawing(manifest_text, d2);

    REQUIRE(a.size() == b.size());
    std::set<int> orders;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].doc_order == b[i].doc_order);
        CHECK(classify_object(a[i].body) == classify_object(b[i].body));
        CHECK(a[i].anchor.kind == b[i].anchor.kind);
        orders.insert(a[i].doc_order);
    }
    CHECK(orders.size() == a.size());
    CHECK(*orders.begin() == 0);
    CHECK(*orders.rbegin() == static_cast<int>(a.size()) - 1);
}

TEST_CASE("round-trip: parsed objects recover the manifest declaration") {
    DiagnosticList diags;
    std::string manifest_text = testsupport::load_manifest_text("fig2.json");
    auto manifest = forge::FixtureManifest::parse(manifest_text);
    auto objects = parse_fixture_drawing(manifest_text, diags);

    std::multiset<std::string> declared_texts, parsed_texts;
    int declared_connectors = 0, parsed_connectors = 0;
    for (const auto& o : manifest.sheets[0].objects) {
        if (o.text)
            declared_texts.insert(*o.text);
        if (o.kind.rfind("straightConnector", 0) == 0 || o.kind.rfind("bentConnector", 0) == 0)
            ++declared_connectors;
    }
    for (const auto& o : objects) {
        if (const auto* shape = std::get_if<RawShape>(&o.body.value)) {
            if (shape->text && !shape->text->empty())
                parsed_texts.insert(*shape->text);
        } else if (std::holds_alternative<RawConnector>(o.body.value)) {
            ++parsed_connectors;
        }
    }
    CHECK(parsed_texts == declared_texts);
    CHECK(parsed_connectors == declared_connectors);
}

TEST_CASE("connector adjustments and arrows are preserved") {
    DiagnosticList diags;
    auto objects = parse_fixture_drawing(R"({
      "sheets": [{"objects": [
        {"kind": "bentConnector3", "frame": [0, 0, 100, 60], "flip_h": true,
         "tail_arrow": true, "head_arrow": false, "adjustments": {"adj1": 25000}}
      ]}]})", diags);
    REQUIRE(objects.size() == 1);
    const auto& conn = std::get<RawConnector>(objects[0].body.value);
    CHECK(conn.preset == "bentConnector3");
    CHECK(conn.xfrm.flip_h);
    CHECK_FALSE(conn.xfrm.flip_v);
    CHECK(conn.tail_arrow);
    CHECK_FALSE(conn.head_arrow);
    REQUIRE(conn.adjustments.size() == 1);
    CHECK(conn.adjustments[0].name == "adj1");
    CHECK(conn.adjustments[0].value == 25000);
}
