#include "cli.hpp"

#include "gridmotif/config.hpp"
#include "gridmotif/error.hpp"
#include "gridmotif/export.hpp"
#include "gridmotif/hierarchy.hpp"
#include "gridmotif/ingest.hpp"
#include "gridmotif/mine.hpp"
#include "gridmotif/pipeline.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

namespace gridmotif::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

struct CommonOptions {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::string> window;
    std::optional<std::string> stride;
    std::optional<std::size_t> delta;
    std::optional<int> alphabet;
    std::optional<double> epsilon_on;
    bool unmetered = false;
    unsigned threads = 1;
};

void add_common(CLI::App& cmd, CommonOptions& opts)
{
    cmd.add_option("--config", opts.config_path, "JSON pipeline config");
    cmd.add_option("--out", opts.out_dir, "Output directory")->capture_default_str();
    cmd.add_option("--window", opts.window, "Window length, e.g. 1h");
    cmd.add_option("--stride", opts.stride, "Window stride, e.g. 15m (default: window length)");
    cmd.add_option("--delta", opts.delta, "Frames per temporal motif");
    cmd.add_option("--alphabet", opts.alphabet, "Number of uniform energy levels");
    cmd.add_option("--epsilon-on", opts.epsilon_on, "kW a window mean must exceed for an edge to exist");
    cmd.add_flag("--unmetered", opts.unmetered, "Model the conservation residual as an 'unmetered' channel");
    cmd.add_option("--threads", opts.threads, "Worker threads for per-channel work")->check(CLI::Range(1u, 256u));
}

PipelineConfig resolve_config(const CommonOptions& opts)
{
    PipelineConfig cfg;
    if (!opts.config_path.empty()) {
        cfg = PipelineConfig::from_json_file(opts.config_path);
    }
    try {
        if (opts.window) {
            cfg.window_length = parse_duration(*opts.window);
        }
        if (opts.stride) {
            cfg.stride = parse_duration(*opts.stride);
            if (cfg.stride <= 0) {
                fail(ErrorCode::BadConfig, "stride must be positive");
            }
        }
    } catch (const Error& e) {
        if (e.code() == ErrorCode::BadConfig) {
            throw;
        }
        fail(ErrorCode::BadConfig, e.what());
    }
    if (opts.delta) {
        cfg.delta = *opts.delta;
    }
    if (opts.alphabet) {
        cfg.alphabet = AlphabetSpec{*opts.alphabet, {}, {}};
    }
    if (opts.epsilon_on) {
        cfg.epsilon_on = *opts.epsilon_on;
    }
    if (opts.unmetered) {
        cfg.unmetered = true;
    }
    cfg.validate();
    return cfg;
}

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorCode::Io, "cannot open " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string sha256_hex(std::string_view data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        fail(ErrorCode::Io, "SHA-256 failed");
    }
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) {
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    }
    return hex.str();
}

// Collects output files and writes them below the output directory.
class OutputDir {
public:
    explicit OutputDir(fs::path root) : root_(std::move(root))
    {
        std::error_code ec;
        fs::create_directories(root_, ec);
        if (ec) {
            fail(ErrorCode::Io, "cannot create " + root_.string() + ": " + ec.message());
        }
    }

    void write(const fs::path& relative, std::string_view content)
    {
        const auto full = root_ / relative;
        std::error_code ec;
        fs::create_directories(full.parent_path(), ec);
        std::ofstream out(full, std::ios::binary | std::ios::trunc);
        if (ec || !out) {
            fail(ErrorCode::Io, "cannot write " + full.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            fail(ErrorCode::Io, "cannot write " + full.string());
        }
        written_.push_back(relative.generic_string());
    }

    // Records how the outputs were produced; no clock or host data so
    // repeated runs stay byte-identical.
    void write_manifest(std::string_view command, const PipelineConfig* config,
                        const std::vector<std::pair<std::string, std::string>>& inputs)
    {
        ojson doc;
        doc["command"] = command;
        if (config != nullptr) {
            const auto text = config->to_json_text();
            doc["config"] = ojson::parse(text);
            doc["config_sha256"] = sha256_hex(text);
        }
        ojson in = ojson::array();
        for (const auto& [path, content] : inputs) {
            in.push_back({{"path", path}, {"sha256", sha256_hex(content)}});
        }
        doc["inputs"] = std::move(in);
        auto files = written_;
        std::sort(files.begin(), files.end());
        doc["outputs"] = files;
        const auto text = doc.dump(2) + "\n";
        std::ofstream out(root_ / "manifest.json", std::ios::binary | std::ios::trunc);
        if (!out || !(out << text)) {
            fail(ErrorCode::Io, "cannot write manifest in " + root_.string());
        }
    }

private:
    fs::path root_;
    std::vector<std::string> written_;
};

std::string safe_component(std::string_view id)
{
    std::string out;
    for (char c : id) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                        c == '_' || c == '.';
        out += ok ? c : '_';
    }
    if (out.empty() || out == "." || out == "..") {
        out = "_" + out;
    }
    return out;
}

MotifSet motif_set_of(const PipelineResult& r, std::size_t delta)
{
    return MotifSet{r.star.node_id, r.star.center, r.alphabet.labels(), delta, r.motifs};
}

ChannelSchema schema_arg(const std::string& path)
{
    if (path.empty()) {
        return ChannelSchema{"mains", {}};
    }
    return ChannelSchema::from_json_file(path);
}

std::vector<std::pair<std::string, std::string>> csv_inputs(const std::string& csv, const std::string& schema)
{
    std::vector<std::pair<std::string, std::string>> inputs{{csv, read_file(csv)}};
    if (!schema.empty()) {
        inputs.emplace_back(schema, read_file(schema));
    }
    return inputs;
}

void write_motif_outputs(OutputDir& dir, const fs::path& prefix, const PipelineResult& result, std::size_t delta,
                         bool json, bool dot)
{
    if (json) {
        dir.write(prefix / "motifs.json", motifs_to_json(motif_set_of(result, delta)));
    }
    if (dot) {
        for (std::size_t m = 0; m < result.motifs.size(); ++m) {
            for (std::size_t f = 0; f < result.motifs[m].frames.size(); ++f) {
                std::ostringstream name;
                name << "motif_" << std::setw(4) << std::setfill('0') << m << "_frame_" << f << ".dot";
                dir.write(prefix / "dot" / name.str(), frame_to_dot(result.motifs[m], f, result.star.node_id));
            }
        }
    }
}

void print_summary(std::ostream& out, const PipelineResult& r)
{
    out << r.star.node_id << ": k=" << r.star.node_count() << " nodes, w=" << r.plan.window_count << " windows, "
        << r.motifs.size() << " temporal motif(s)";
    if (r.plan.dropped_samples > 0) {
        out << ", " << r.plan.dropped_samples << " trailing sample(s) dropped";
    }
    out << '\n';
}

void print_top(std::ostream& out, const std::vector<std::pair<MotifSignature, std::size_t>>& rows)
{
    out << "rank\tcount\tsignature\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out << (i + 1) << '\t' << rows[i].second << '\t' << rows[i].first << '\n';
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Symbolic temporal star motifs for smart-meter data", "gridmotif"};
    app.require_subcommand(1);

    CommonOptions opts;
    std::string csv_path;
    std::string schema_path;
    std::string input_path;
    bool want_json = false;
    bool want_dot = false;
    std::size_t k = 10;
    bool verify = false;
    std::string mine_out;

    auto* symbolize = app.add_subcommand("symbolize", "Write per-channel window symbols as CSV");
    symbolize->add_option("csv", csv_path, "Meter CSV")->required();
    symbolize->add_option("--schema", schema_path, "Channel-kind schema JSON");
    add_common(*symbolize, opts);

    auto* motifs = app.add_subcommand("motifs", "Build temporal star motifs");
    motifs->add_option("csv", csv_path, "Meter CSV")->required();
    motifs->add_option("--schema", schema_path, "Channel-kind schema JSON");
    motifs->add_flag("--json", want_json, "Write motifs.json (default when no format is given)");
    motifs->add_flag("--dot", want_dot, "Write one DOT digraph per frame");
    add_common(*motifs, opts);

    auto* hierarchy = app.add_subcommand("hierarchy", "Motifs and counts at every level of a grid hierarchy");
    hierarchy->add_option("hierarchy", input_path, "Hierarchy JSON")->required();
    hierarchy->add_flag("--dot", want_dot, "Also write DOT digraphs");
    add_common(*hierarchy, opts);

    auto* mine = app.add_subcommand("mine", "Rank recurring motif signatures");
    mine->add_option("motifs", input_path, "motifs.json written by 'motifs' or 'hierarchy'")->required();
    mine->add_option("-k,--top", k, "Number of signatures to list")->capture_default_str();
    mine->add_flag("--verify", verify, "Cross-check counts against the brute-force oracle");
    mine->add_option("--out", mine_out, "Also write counts.json and counts.csv here");
    mine->add_option("--threads", opts.threads, "Worker threads for counting")->check(CLI::Range(1u, 256u));

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.emplace_back("gridmotif");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage) {
        argv.push_back(a.data());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (symbolize->parsed()) {
            const auto config = resolve_config(opts);
            const auto series = load_csv(csv_path, schema_arg(schema_path));
            const auto result = run_pipeline(series, config, opts.threads);
            OutputDir dir(opts.out_dir);
            dir.write("symbols.csv", symbols_to_csv(result.channels));
            dir.write_manifest("symbolize", &config, csv_inputs(csv_path, schema_path));
            print_summary(out, result);
        } else if (motifs->parsed()) {
            const auto config = resolve_config(opts);
            const auto series = load_csv(csv_path, schema_arg(schema_path));
            const auto result = run_pipeline(series, config, opts.threads);
            OutputDir dir(opts.out_dir);
            write_motif_outputs(dir, {}, result, config.delta, want_json || !want_dot, want_dot);
            dir.write_manifest("motifs", &config, csv_inputs(csv_path, schema_path));
            print_summary(out, result);
        } else if (hierarchy->parsed()) {
            const auto config = resolve_config(opts);
            const auto root = load_hierarchy(input_path);
            OutputDir dir(opts.out_dir);
            std::vector<std::pair<std::string, std::string>> inputs{{input_path, read_file(input_path)}};
            std::set<std::string> used;
            for (const auto* node : flatten(root)) {
                const auto folder = safe_component(node->node_id);
                if (!used.insert(folder).second) {
                    fail(ErrorCode::BadHierarchy, "node ids collide as directory names: '" + node->node_id + "'");
                }
                const auto result = pipeline_at_level(*node, config, opts.threads);
                write_motif_outputs(dir, folder, result, config.delta, true, want_dot);
                const auto counts = count_signatures(result.motifs, opts.threads);
                dir.write(fs::path(folder) / "counts.json", counts_to_json(counts));
                dir.write(fs::path(folder) / "counts.csv", counts_to_csv(counts));
                out << "L" << node->level << " b=" << node->branching() << " ";
                print_summary(out, result);
                if (!node->source.empty()) {
                    inputs.emplace_back(node->source.generic_string(), read_file(node->source));
                }
            }
            dir.write_manifest("hierarchy", &config, inputs);
        } else if (mine->parsed()) {
            if (k < 1) {
                fail(ErrorCode::InvalidArgument, "k must be at least 1");
            }
            const auto text = read_file(input_path);
            const auto set = parse_motifs_json(text);
            const auto counts = count_signatures(set.motifs, opts.threads);
            print_top(out, top_k(counts, k));
            if (verify) {
                if (!verify_counts(set.motifs, counts)) {
                    err << "verify: signature counts disagree with the brute-force oracle\n";
                    return kExitValidation;
                }
                out << "verify: ok (" << counts.counts.size() << " distinct of " << counts.total_motifs << ")\n";
            }
            if (!mine_out.empty()) {
                OutputDir dir(mine_out);
                dir.write("counts.json", counts_to_json(counts));
                dir.write("counts.csv", counts_to_csv(counts));
                dir.write_manifest("mine", nullptr, {{input_path, text}});
            }
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.is_io() ? kExitIo : kExitValidation;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitOk;
}

}  // namespace gridmotif::cli
