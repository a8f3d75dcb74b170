#include "xlsxdiag/diagram_graph.hpp"
#include "xlsxdiag/extract.hpp"
#include "xlsxdiag/prompts.hpp"
#include "xlsxdiag/svg_preview.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace xlsxdiag;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitUsageError = 3;

void print_diagnostics(const DiagnosticList& diags) {
    for (const auto& d : diags)
        std::cerr << severity_name(d.severity) << " [" << d.code << "] " << d.message << "\n";
}

int write_output(const std::string& content, const std::optional<std::string>& out_path) {
    if (!out_path) {
        std::cout << content;
        return kExitOk;
    }
    std::ofstream out(*out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error [io_error] cannot open output file: " << *out_path << "\n";
        return kExitInputError;
    }
    out << content;
    return out.good() ? kExitOk : kExitInputError;
}

std::optional<std::string> read_entity_block(const std::string& source) {
    if (source == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(source, std::ios::binary);
    if (!in)
        throw IoError("cannot read entity block file: " + source);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Extract diagram content from .xlsx drawings"};
    app.set_version_flag("--version", XLSXDIAGRAM_VERSION);
    app.require_subcommand(1);

    std::string input;
    std::optional<std::string> out_path;
    std::string format = "json";
    std::string task = "entities";
    std::optional<std::string> entity_block_source;
    GraphConfig graph_config;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("input", input, "Input .xlsx file")->required();
        cmd->add_option("--out", out_path, "Write output to a file instead of stdout");
    };
    auto add_thresholds = [&](CLI::App* cmd) {
        cmd->add_option("--gap-tolerance", graph_config.link_gap_tolerance,
                        "Endpoint binding gap tolerance in points")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--overlap-min", graph_config.containment_overlap_min,
                        "Minimum text-box overlap fraction for component pairing")
            ->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--annotation-distance", graph_config.annotation_max_distance,
                        "Maximum annotation-to-connector distance in points")
            ->check(CLI::NonNegativeNumber);
    };

    CLI::App* cmd_extract = app.add_subcommand("extract", "Emit the canonical diagram JSON");
    add_common(cmd_extract);

    CLI::App* cmd_graph = app.add_subcommand("graph", "Emit the inferred entity/relation graph");
    add_common(cmd_graph);
    cmd_graph->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "dot", "mermaid"}));
    add_thresholds(cmd_graph);

    CLI::App* cmd_prompt = app.add_subcommand("prompt", "Render an LLM prompt for the diagram");
    add_common(cmd_prompt);
    cmd_prompt->add_option("--task", task, "Prompt task")
        ->check(CLI::IsMember({"entities", "relations"}));
    cmd_prompt->add_option("--entity-block", entity_block_source,
                           "Entity analysis text (file path or '-' for stdin)");

    CLI::App* cmd_preview = app.add_subcommand("preview", "Emit a debug SVG rendering");
    add_common(cmd_preview);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error [usage] " << e.what() << "\n";
        return kExitUsageError;
    }

    try {
        CanonicalDiagram diagram = extract_file(input);

        if (cmd_extract->parsed()) {
            print_diagnostics(diagram.diagnostics);
            return write_output(serialize_json(diagram), out_path);
        }
        if (cmd_graph->parsed()) {
            DiagnosticList graph_diags;
            DiagramGraph graph = build_graph(diagram, graph_config, graph_diags);
            print_diagnostics(diagram.diagnostics);
            print_diagnostics(graph_diags);
            GraphFormat fmt = format == "dot"       ? GraphFormat::dot
                              : format == "mermaid" ? GraphFormat::mermaid
                                                    : GraphFormat::json;
            return write_output(export_graph(diagram, graph, fmt), out_path);
        }
        if (cmd_prompt->parsed()) {
            print_diagnostics(diagram.diagnostics);
            std::optional<std::string> entity_block;
            if (entity_block_source)
                entity_block = read_entity_block(*entity_block_source);
            PromptTask prompt_task =
                task == "relations" ? PromptTask::relations : PromptTask::entities;
            return write_output(render_prompt(prompt_task, serialize_json(diagram), entity_block),
                                out_path);
        }
        if (cmd_preview->parsed()) {
            print_diagnostics(diagram.diagnostics);
            return write_output(render_svg(diagram), out_path);
        }
    } catch (const ExtractionError& e) {
        std::cerr << "error [" << e.code() << "] " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error [internal] " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}
