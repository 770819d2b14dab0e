// Copyright 2026 The qqbf Authors
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

#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "qqbf/blocks.hpp"
#include "qqbf/chain.hpp"
#include "qqbf/compiler.hpp"
#include "qqbf/estimation.hpp"
#include "qqbf/fock_oracle.hpp"
#include "qqbf/json_io.hpp"
#include "qqbf/parallel.hpp"

namespace qqbf::cli {

const std::vector<TableRow> &table_s1_rows() {
    static const std::vector<TableRow> rows{
        {{"1", "1", "1"}, {0.031, 0.031, 0.031, 0.031}},
        {{"1", "-1", "-1"}, {0.016, 0.016, 0.016, 0.016}},
        {{"-1", "-1", "1"}, {0.031, 0.031, 0.031, 0.031}},
        {{"-i", "i", "-i"}, {0.016, 0.016, 0.016, 0.016}},
        {{"-i", "-i", "i"}, {0.031, 0.031, 0.031, 0.031}},
        {{"-i", "0", "-i"}, {0.039, 0.008, 0.039, 0.008}},
        {{"0", "i", "-i"}, {0.039, 0.008, 0.039, 0.008}},
        {{"inf", "0", "-i"}, {0.016, 0.016, 0.016, 0.016}},
        {{"1", "0", "1"}, {0.039, 0.008, 0.039, 0.008}},
        {{"0", "1", "1"}, {0.039, 0.008, 0.039, 0.008}},
        {{"inf", "0", "1"}, {0.016, 0.016, 0.016, 0.016}},
        {{"0", "0", "-i"}, {0.063, 0.000, 0.063, 0.000}},
        {{"0", "0", "1"}, {0.062, 0.000, 0.062, 0.000}},
        {{"0", "0", "0"}, {0.125, 0.000, 0.125, 0.000}},
        {{"inf", "inf", "inf"}, {0.000, 0.125, 0.000, 0.125}},
        {{"-0.13+0.88i", "-0.24-0.15i", "1"}, {0.038, 0.008, 0.038, 0.008}},
        {{"-0.27+0.74i", "0", "1"}, {0.044, 0.006, 0.044, 0.006}},
        {{"-0.27+0.74i", "1", "1"}, {0.024, 0.017, 0.024, 0.017}},
        {{"0", "-0.27-0.74i", "1"}, {0.044, 0.006, 0.044, 0.006}},
        {{"1", "-0.27-0.74i", "1"}, {0.024, 0.017, 0.024, 0.017}},
        {{"-0.27+0.74i", "0", "-1"}, {0.044, 0.006, 0.044, 0.006}},
        {{"-0.27+0.74i", "1", "-1"}, {0.024, 0.017, 0.024, 0.017}},
        {{"-0.31-0.40i", "-3.25+0.90i", "-0.53+1.15i"}, {0.019, 0.024, 0.019, 0.024}},
        {{"1.97+2.41i", "0.04+0.65i", "2.03-0.71i"}, {0.024, 0.032, 0.024, 0.032}},
        {{"0.06+0.15i", "-0.33+1.77i", "0.08-1.33i"}, {0.028, 0.011, 0.028, 0.011}},
        {{"-1.09-1.77i", "-0.78+1.02i", "0.58-0.33i"}, {0.009, 0.026, 0.009, 0.026}},
        {{"-0.49-0.03i", "1.10-0.28i", "-0.36-0.95i"}, {0.024, 0.010, 0.024, 0.010}},
        {{"0.23-0.32i", "0.95-0.78i", "-1.37+0.23i"}, {0.033, 0.016, 0.033, 0.016}},
        {{"0.12+0.06i", "-1.51-0.72i", "-0.20-0.25i"}, {0.031, 0.017, 0.031, 0.017}},
        {{"-0.86-0.43i", "-0.44-0.87i", "0.53-0.26i"}, {0.032, 0.028, 0.032, 0.028}},
    };
    return rows;
}

namespace {

// Printed values have 3 decimals; 0.0625 rounds either way, hence the epsilon.
constexpr double kTableTol = 5e-4 + 1e-12;

struct RunConfig {
    std::string engine = "closed_form";
    double visibility = 1.0;
    std::uint64_t shots = 0;
    std::uint64_t seed = 1;
    std::string format = "json";
};

void add_common(CLI::App *cmd, RunConfig &cfg, const std::string &default_format) {
    cfg.format = default_format;
    cmd->add_option("--engine", cfg.engine, "closed_form or oracle")
        ->check(CLI::IsMember({"closed_form", "oracle"}))
        ->capture_default_str();
    cmd->add_option("--visibility,-V", cfg.visibility, "pairwise HOM visibility")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_option("--shots", cfg.shots, "tomography shots per basis (0 = exact)")->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
    cmd->add_option("--format", cfg.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot read file '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string csv_number(double x) {
    std::ostringstream os;
    os << std::setprecision(10) << x;
    return os.str();
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char ch : s) {
        q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    }
    return q + "\"";
}

BlockOutcome closed_block(BlockKind kind, const Coin &z1, const Coin &z2, Visibility v) {
    switch (kind) {
        case BlockKind::Invert: {
            BlockOutcome out;
            Coin c = invert(z1).normalized();
            out.state = coin_density(c);
            out.success_prob = 1.0;
            out.ideal_coin = c;
            return out;
        }
        case BlockKind::Product:
        case BlockKind::Antiproduct:
            return product_output(z1, z2, product_branch(kind), v);
        case BlockKind::ArithmeticMean:
        case BlockKind::HarmonicMean:
            return sum_output(z1, z2, sum_branch(kind), v);
    }
    return BlockOutcome::make_indefinite();
}

// Closed forms cover V = 1 for any circuit, and single blocks or
// mean-then-product chains for V < 1.
std::optional<BlockOutcome> closed_form_circuit(const BlockCircuit &circuit, std::span<const Coin> data,
                                                Visibility v) {
    auto leaf = [&](const WireRef &w) -> std::optional<Coin> {
        switch (w.source) {
            case WireRef::Source::Data:
                return data[w.index];
            case WireRef::Source::Register:
                return circuit.registers()[w.index];
            case WireRef::Source::Node:
                break;
        }
        return std::nullopt;
    };
    if (v.value() == 1.0) {
        IdealResult r = evaluate_ideal(circuit, data);
        if (!r.coin) {
            return BlockOutcome::make_indefinite();
        }
        BlockOutcome out;
        out.state = coin_density(*r.coin);
        out.success_prob = r.success_prob;
        out.ideal_coin = r.coin;
        return out;
    }
    const auto &nodes = circuit.nodes();
    WireRef output = circuit.output();
    if (nodes.empty()) {
        BlockOutcome out;
        Coin c = leaf(output)->normalized();
        out.state = coin_density(c);
        out.success_prob = 1.0;
        out.ideal_coin = c;
        return out;
    }
    if (output != WireRef::node(nodes.size() - 1)) {
        return std::nullopt;
    }
    if (nodes.size() == 1) {
        auto z1 = leaf(nodes[0].inputs[0]);
        auto z2 = nodes[0].inputs.size() > 1 ? leaf(nodes[0].inputs[1]) : z1;
        if (!z1 || !z2) {
            return std::nullopt;
        }
        return closed_block(nodes[0].kind, *z1, *z2, v);
    }
    if (nodes.size() == 2 && is_sum(nodes[0].kind) && is_product(nodes[1].kind)) {
        auto z1 = leaf(nodes[0].inputs[0]);
        auto z2 = leaf(nodes[0].inputs[1]);
        const auto &in = nodes[1].inputs;
        std::optional<Coin> z3;
        if (in[0] == WireRef::node(0)) {
            z3 = leaf(in[1]);
        } else if (in[1] == WireRef::node(0)) {
            z3 = leaf(in[0]);
        }
        if (!z1 || !z2 || !z3) {
            return std::nullopt;
        }
        return concat3_output(*z1, *z2, *z3, chain_combo(sum_branch(nodes[0].kind), product_branch(nodes[1].kind)),
                              v);
    }
    return std::nullopt;
}

BlockOutcome run_engine(const RunConfig &cfg, const BlockCircuit &circuit, std::span<const Coin> data) {
    Visibility v(cfg.visibility);
    if (cfg.engine == "oracle") {
        return simulate_circuit(circuit, data, v);
    }
    auto out = closed_form_circuit(circuit, data, v);
    if (!out) {
        throw std::invalid_argument(
            "no closed form for this circuit at V < 1 (single blocks and mean-product chains only); use --engine "
            "oracle");
    }
    return *out;
}

// Tomography on the model state: identity at shots = 0.
DensityMatrix2 measured_state(const RunConfig &cfg, const DensityMatrix2 &rho, std::uint64_t trial) {
    if (cfg.shots == 0) {
        return reconstruct_exact(rho);
    }
    return reconstruct(sample_counts(rho, cfg.shots, cfg.seed, trial));
}

Json outcome_report(const RunConfig &cfg, const BlockOutcome &out) {
    Json j = outcome_to_json(out);
    const DensityMatrix2 &rho = *out.state;
    j["purity"] = rho.purity();
    j["fidelity_ideal"] = fidelity(rho, coin_density(*out.ideal_coin));
    if (cfg.shots > 0) {
        DensityMatrix2 est = measured_state(cfg, rho, 0);
        j["reconstructed"] = density_to_json(est);
        j["fidelity_reconstructed"] = fidelity(est, rho);
    }
    return j;
}

void print_outcome_csv(std::ostream &out, const std::vector<std::pair<std::string, std::string>> &head,
                       const RunConfig &cfg, const BlockOutcome &o) {
    const DensityMatrix2 &rho = *o.state;
    std::vector<std::pair<std::string, std::string>> cols = head;
    cols.emplace_back("ideal_coin", format_coin(*o.ideal_coin));
    cols.emplace_back("success_prob", csv_number(o.success_prob));
    cols.emplace_back("rho00", csv_number(rho(0, 0).real()));
    cols.emplace_back("rho01_re", csv_number(rho(0, 1).real()));
    cols.emplace_back("rho01_im", csv_number(rho(0, 1).imag()));
    cols.emplace_back("rho11", csv_number(rho(1, 1).real()));
    cols.emplace_back("fidelity_ideal", csv_number(fidelity(rho, coin_density(*o.ideal_coin))));
    if (cfg.shots > 0) {
        cols.emplace_back("fidelity_reconstructed", csv_number(fidelity(measured_state(cfg, rho, 0), rho)));
    }
    for (std::size_t i = 0; i < cols.size(); ++i) {
        out << (i ? "," : "") << cols[i].first;
    }
    out << "\n";
    for (std::size_t i = 0; i < cols.size(); ++i) {
        out << (i ? "," : "") << csv_field(cols[i].second);
    }
    out << "\n";
}

class IndefiniteOutcome : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

int emit_outcome(std::ostream &out, const RunConfig &cfg, const BlockOutcome &o, const std::string &what,
                 const std::vector<std::pair<std::string, std::string>> &head) {
    if (o.indefinite()) {
        throw IndefiniteOutcome("indefinite: " + what + " is a critical point (zero success probability)");
    }
    if (cfg.format == "csv") {
        print_outcome_csv(out, head, cfg, o);
    } else {
        Json j = outcome_report(cfg, o);
        for (const auto &[k, v] : head) {
            j[k] = v;
        }
        out << j.dump(2) << "\n";
    }
    return kOk;
}

BlockKind parse_block(const std::string &op, const std::string &branch) {
    if (op == "invert") {
        return BlockKind::Invert;
    }
    if (op == "product" || op == "antiproduct") {
        if (op == "antiproduct" || branch == "minus" || branch == "-") {
            return BlockKind::Antiproduct;
        }
        if (branch.empty() || branch == "plus" || branch == "+") {
            return BlockKind::Product;
        }
    }
    if (op == "sum" || op == "harmonic") {
        if (op == "harmonic" || branch == "I") {
            return BlockKind::HarmonicMean;
        }
        if (branch.empty() || branch == "S") {
            return BlockKind::ArithmeticMean;
        }
    }
    throw ParseError("unknown block '" + op + "' with branch '" + branch + "'");
}

ChainCombo parse_combo(const std::string &s) {
    for (ChainCombo c : {ChainCombo::SP, ChainCombo::MP, ChainCombo::SA, ChainCombo::MA}) {
        if (s == to_string(c)) {
            return c;
        }
    }
    throw ParseError("unknown combo '" + s + "' (expected SP, MP, SA or MA)");
}

struct BlockArgs {
    RunConfig cfg;
    std::string op, branch, z1, z2 = "1";
};

int cmd_block(const BlockArgs &a, std::ostream &out) {
    BlockKind kind = parse_block(a.op, a.branch);
    Coin z1 = parse_coin(a.z1);
    Coin z2 = parse_coin(a.z2);
    BlockOutcome o;
    if (a.cfg.engine == "oracle") {
        o = oracle_block(kind, z1, z2, Visibility(a.cfg.visibility));
    } else {
        o = closed_block(kind, z1, z2, Visibility(a.cfg.visibility));
    }
    std::string where = std::string(to_string(kind)) + " at (" + format_coin(z1) +
                        (kind == BlockKind::Invert ? "" : ", " + format_coin(z2)) + ")";
    std::vector<std::pair<std::string, std::string>> head{{"op", std::string(to_string(kind))},
                                                          {"z1", format_coin(z1)}};
    if (kind != BlockKind::Invert) {
        head.emplace_back("z2", format_coin(z2));
    }
    return emit_outcome(out, a.cfg, o, where, head);
}

struct ChainArgs {
    RunConfig cfg;
    std::string combo = "SP", z1, z2, z3;
};

int cmd_chain(const ChainArgs &a, std::ostream &out) {
    ChainCombo combo = parse_combo(a.combo);
    Coin z1 = parse_coin(a.z1);
    Coin z2 = parse_coin(a.z2);
    Coin z3 = parse_coin(a.z3);
    Visibility v(a.cfg.visibility);
    BlockOutcome o = a.cfg.engine == "oracle" ? oracle_chain3(z1, z2, z3, combo, v) : concat3_output(z1, z2, z3, combo, v);
    std::string where = std::string(to_string(combo)) + " chain at (" + format_coin(z1) + ", " + format_coin(z2) +
                        ", " + format_coin(z3) + ")";
    return emit_outcome(out, a.cfg, o, where,
                        {{"combo", std::string(to_string(combo))},
                         {"z1", format_coin(z1)},
                         {"z2", format_coin(z2)},
                         {"z3", format_coin(z3)}});
}

struct TableArgs {
    RunConfig cfg;
    bool check = false;
};

int cmd_table_s1(const TableArgs &a, std::ostream &out, std::ostream &err) {
    const auto &rows = table_s1_rows();
    const ChainCombo combos[] = {ChainCombo::SP, ChainCombo::MP, ChainCombo::SA, ChainCombo::MA};
    std::vector<std::array<double, 4>> probs(rows.size());
    Visibility v(a.cfg.visibility);
    parallel_for(rows.size(), [&](std::size_t i) {
        Coin z1 = parse_coin(rows[i].inputs[0]);
        Coin z2 = parse_coin(rows[i].inputs[1]);
        Coin z3 = parse_coin(rows[i].inputs[2]);
        for (int c = 0; c < 4; ++c) {
            probs[i][c] = a.cfg.engine == "oracle" ? oracle_chain3(z1, z2, z3, combos[c], v).success_prob
                                                   : concat3_success_prob(z1, z2, z3, combos[c]);
        }
    });

    if (a.cfg.format == "csv") {
        out << "z1,z2,z3,P_SP,P_MP,P_SA,P_MA\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            out << rows[i].inputs[0] << "," << rows[i].inputs[1] << "," << rows[i].inputs[2];
            for (double p : probs[i]) {
                out << "," << csv_number(p);
            }
            out << "\n";
        }
    } else {
        Json arr = Json::array();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            Json r{{"inputs", {rows[i].inputs[0], rows[i].inputs[1], rows[i].inputs[2]}}};
            for (int c = 0; c < 4; ++c) {
                r["P_" + std::string(to_string(combos[c]))] = probs[i][c];
            }
            arr.push_back(r);
        }
        out << arr.dump(2) << "\n";
    }

    if (!a.check) {
        return kOk;
    }
    int mismatches = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (int c = 0; c < 4; ++c) {
            if (!(std::abs(probs[i][c] - rows[i].printed[c]) <= kTableTol)) {
                ++mismatches;
                err << "mismatch row " << i + 1 << " (" << rows[i].inputs[0] << "," << rows[i].inputs[1] << ","
                    << rows[i].inputs[2] << ") " << to_string(combos[c]) << ": computed " << probs[i][c]
                    << ", printed " << rows[i].printed[c] << "\n";
            }
        }
    }
    if (mismatches > 0) {
        err << mismatches << " table entries differ by more than 5e-4\n";
        return kCheckMismatch;
    }
    err << "table check passed (120 entries)\n";
    return kOk;
}

struct CompileArgs {
    RunConfig cfg;
    std::string num, den = "1", function, out_path;
    std::vector<std::string> probes;
};

int cmd_compile(const CompileArgs &a, std::ostream &out, std::ostream &err) {
    RationalFunction direct;
    CompilationReport report = [&] {
        if (!a.function.empty()) {
            std::string text = a.function;
            if (text.find('{') == std::string::npos) {
                text = read_file(text);
            }
            FunctionSpec spec = function_from_json(parse_json(text));
            if (auto *f = std::get_if<RationalFunction>(&spec)) {
                direct = *f;
                return compile_rational(*f);
            }
            const auto &g = std::get<FactoredRational>(spec);
            direct = expand(g);
            return compile_factored(g);
        }
        if (a.num.empty()) {
            throw ParseError("compile needs --num/--den or --function");
        }
        direct = {parse_complex_list(a.num), parse_complex_list(a.den)};
        return compile_rational(direct);
    }();

    Json j = report_to_json(report);
    Json probes = Json::array();
    for (const auto &p : a.probes) {
        Coin z = parse_coin(p);
        std::vector<Coin> data(report.circuit.n_data_inputs(), z);
        IdealResult r = evaluate_ideal(report.circuit, data);
        Json row{{"z", format_coin(z)}, {"success_prob", r.success_prob}};
        if (!r.coin) {
            row["value"] = "indefinite";
            row["diagnostic"] = "indefinite (critical point of some block)";
        } else {
            row["value"] = format_coin(*r.coin);
            if (r.coin->is_infinite()) {
                row["diagnostic"] = "pole";
            }
        }
        auto expected = evaluate_rational(direct, z);
        row["direct"] = expected ? Json(format_coin(*expected)) : Json("indefinite");
        probes.push_back(row);
    }
    j["probes"] = probes;
    if (!a.out_path.empty()) {
        std::ofstream f(a.out_path);
        if (!f) {
            throw ParseError("cannot write '" + a.out_path + "'");
        }
        f << circuit_to_json(report.circuit).dump(2) << "\n";
    }
    out << j.dump(2) << "\n";
    for (const auto &w : report.warnings) {
        err << "warning: " << w << "\n";
    }
    if (report.degenerate) {
        err << "error: degenerate function (numerator is identically zero)\n";
        return kUsage;
    }
    return kOk;
}

struct ExperimentArgs {
    RunConfig cfg;
    std::string circuit, inputs;
};

struct ExperimentRow {
    std::vector<Coin> inputs;
    std::string shape;
    std::optional<double> prob, fid_model, fid_ideal;
    std::string ideal;
    std::string error;
};

std::string circuit_shape(const BlockCircuit &c) {
    const auto &n = c.nodes();
    if (n.size() == 1) {
        return std::string(to_string(n[0].kind));
    }
    if (n.size() == 2 && is_sum(n[0].kind) && is_product(n[1].kind)) {
        return std::string(to_string(chain_combo(sum_branch(n[0].kind), product_branch(n[1].kind))));
    }
    return "circuit";
}

int cmd_experiment(const ExperimentArgs &a, std::ostream &out) {
    BlockCircuit circuit = circuit_from_json(parse_json(read_file(a.circuit)));
    Json inputs = parse_json(read_file(a.inputs));
    if (!inputs.is_array()) {
        throw ParseError("inputs file must hold a JSON array of rows");
    }
    // A row is a JSON array of data coins, or a single coin fed to every data
    // input.
    std::vector<std::vector<Coin>> rows;
    for (const auto &r : inputs) {
        std::vector<Coin> row;
        if (r.is_array()) {
            for (const auto &c : r) {
                row.push_back(coin_from_json(c));
            }
        } else {
            row.assign(circuit.n_data_inputs(), coin_from_json(r));
        }
        rows.push_back(std::move(row));
    }

    std::string shape = circuit_shape(circuit);
    std::vector<ExperimentRow> results(rows.size());
    parallel_for(rows.size(), [&](std::size_t i) {
        ExperimentRow &res = results[i];
        res.inputs = rows[i];
        res.shape = shape;
        try {
            BlockOutcome o = run_engine(a.cfg, circuit, rows[i]);
            res.prob = o.success_prob;
            if (!o.indefinite()) {
                DensityMatrix2 est = measured_state(a.cfg, *o.state, i);
                res.fid_model = fidelity(est, *o.state);
                res.fid_ideal = fidelity(est, coin_density(*o.ideal_coin));
                res.ideal = format_coin(*o.ideal_coin);
            }
        } catch (const std::exception &e) {
            res.error = e.what();
        }
    });

    if (a.cfg.format == "csv") {
        out << "row,inputs,shape,success_prob,fidelity_model,fidelity_ideal,ideal_coin,error\n";
        for (std::size_t i = 0; i < results.size(); ++i) {
            const auto &r = results[i];
            std::string in;
            for (std::size_t k = 0; k < r.inputs.size(); ++k) {
                in += (k ? ";" : "") + format_coin(r.inputs[k]);
            }
            auto opt = [](const std::optional<double> &x) { return x ? csv_number(*x) : std::string(); };
            out << i << "," << csv_field(in) << "," << r.shape << "," << opt(r.prob) << "," << opt(r.fid_model)
                << "," << opt(r.fid_ideal) << "," << csv_field(r.ideal) << "," << csv_field(r.error) << "\n";
        }
    } else {
        Json arr = Json::array();
        for (std::size_t i = 0; i < results.size(); ++i) {
            const auto &r = results[i];
            Json in = Json::array();
            for (const auto &c : r.inputs) {
                in.push_back(format_coin(c));
            }
            auto opt = [](const std::optional<double> &x) { return x ? Json(*x) : Json(nullptr); };
            Json row{{"row", i},
                     {"inputs", in},
                     {"shape", r.shape},
                     {"success_prob", opt(r.prob)},
                     {"fidelity_model", opt(r.fid_model)},
                     {"fidelity_ideal", opt(r.fid_ideal)}};
            if (!r.ideal.empty()) {
                row["ideal_coin"] = r.ideal;
            }
            if (!r.error.empty()) {
                row["error"] = r.error;
            }
            arr.push_back(row);
        }
        out << arr.dump(2) << "\n";
    }
    return kOk;
}

struct SampleArgs {
    std::int64_t n = 1;
    std::uint64_t seed = 1;
};

int cmd_sample(const SampleArgs &a, std::ostream &out, std::ostream &err) {
    if (a.n < 1) {
        err << "error: --n must be at least 1\n";
        return kUsage;
    }
    for (const auto &c : sample_haar({a.seed, static_cast<std::size_t>(a.n)})) {
        out << coin_to_json(c).dump() << "\n";
    }
    return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum-to-quantum Bernoulli factory simulator and rational-function compiler", "qqbf"};
    app.require_subcommand(1);

    BlockArgs block;
    auto *block_cmd = app.add_subcommand("block", "evaluate one block");
    block_cmd->add_option("--op", block.op, "product, antiproduct, sum, harmonic or invert")->required();
    block_cmd->add_option("--branch", block.branch, "plus/minus for product, S/I for sum");
    block_cmd->add_option("--z1", block.z1, "first coin")->required();
    block_cmd->add_option("--z2", block.z2, "second coin");
    add_common(block_cmd, block.cfg, "json");

    ChainArgs chain;
    auto *chain_cmd = app.add_subcommand("chain", "evaluate a mean-then-product chain on three coins");
    chain_cmd->add_option("--combo", chain.combo, "SP, MP, SA or MA")->capture_default_str();
    chain_cmd->add_option("--z1", chain.z1)->required();
    chain_cmd->add_option("--z2", chain.z2)->required();
    chain_cmd->add_option("--z3", chain.z3)->required();
    add_common(chain_cmd, chain.cfg, "json");

    TableArgs table;
    auto *table_cmd = app.add_subcommand("table-s1", "success probabilities of the 30 reference triplets");
    table_cmd->add_flag("--check", table.check, "compare with the printed 3-decimal values");
    add_common(table_cmd, table.cfg, "csv");

    CompileArgs comp;
    auto *compile_cmd = app.add_subcommand("compile", "compile a rational function to a block circuit");
    compile_cmd->add_option("--num", comp.num, "numerator coefficients, constant term first");
    compile_cmd->add_option("--den", comp.den, "denominator coefficients")->capture_default_str();
    compile_cmd->add_option("--function", comp.function, "function JSON (inline or file)");
    compile_cmd->add_option("--probe", comp.probes, "evaluate at these coins");
    compile_cmd->add_option("--out", comp.out_path, "write the circuit JSON here");
    add_common(compile_cmd, comp.cfg, "json");

    ExperimentArgs exp;
    auto *exp_cmd = app.add_subcommand("experiment", "run a circuit over a list of inputs");
    exp_cmd->add_option("--circuit", exp.circuit, "circuit JSON file")->required();
    exp_cmd->add_option("--inputs", exp.inputs, "JSON array of input rows")->required();
    add_common(exp_cmd, exp.cfg, "json");

    SampleArgs sample;
    auto *sample_cmd = app.add_subcommand("sample", "Haar-random coins, one JSON per line");
    sample_cmd->add_option("--n,-n", sample.n, "number of coins")->capture_default_str();
    sample_cmd->add_option("--seed", sample.seed)->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*block_cmd) {
            return cmd_block(block, out);
        }
        if (*chain_cmd) {
            return cmd_chain(chain, out);
        }
        if (*table_cmd) {
            return cmd_table_s1(table, out, err);
        }
        if (*compile_cmd) {
            return cmd_compile(comp, out, err);
        }
        if (*exp_cmd) {
            return cmd_experiment(exp, out);
        }
        if (*sample_cmd) {
            return cmd_sample(sample, out, err);
        }
    } catch (const IndefiniteOutcome &e) {
        err << e.what() << "\n";
        return kIndefinite;
    } catch (const IndefiniteError &e) {
        err << "indefinite: " << e.what() << "\n";
        return kIndefinite;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace qqbf::cli
