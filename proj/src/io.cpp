#include "tiler/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "tiler/errors.hpp"

namespace tiler {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string current;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(current);
            current.clear();
        } else if (c != '\r') {
            current += c;
        }
    }
    if (!current.empty()) lines.push_back(current);
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

[[noreturn]] void bad_line(const std::string& what, const std::string& line) {
    throw InputError(what + ": \"" + line + "\"");
}

// Whole-line integer parse; rejects trailing junk.
long long parse_ll(const std::string& token, const std::string& line) {
    std::size_t used = 0;
    long long value = 0;
    try {
        value = std::stoll(token, &used);
    } catch (const std::exception&) {
        bad_line("expected an integer", line);
    }
    if (used != token.size()) bad_line("expected an integer", line);
    return value;
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

int checked_vertex(const Graph& g, long long v, const std::string& line) {
    if (v < 0 || v >= g.vertex_count()) bad_line("vertex out of range", line);
    return static_cast<int>(v);
}

}  // namespace

std::string write_graph(const Graph& g) {
    std::ostringstream out;
    out << "vertices " << g.vertex_count() << '\n';
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int v : g.adj[u])
            if (u < v) out << u << ' ' << v << '\n';
    return out.str();
}

Graph read_graph(const std::string& text, const std::string& name) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw InputError("graph file is empty");
    const auto header = tokens_of(lines[0]);
    if (header.size() != 2 || header[0] != "vertices")
        bad_line("graph header must be `vertices N`", lines[0]);
    const long long n = parse_ll(header[1], lines[0]);
    if (n < 0 || n > 10000000) bad_line("vertex count out of range", lines[0]);
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto toks = tokens_of(lines[i]);
        if (toks.size() != 2) bad_line("edge line must be `u v`", lines[i]);
        const long long u = parse_ll(toks[0], lines[i]);
        const long long v = parse_ll(toks[1], lines[i]);
        if (u < 0 || u >= n || v < 0 || v >= n) bad_line("vertex out of range", lines[i]);
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    return from_edge_list(static_cast<int>(n), edges, name);
}

std::string write_witness(const WitnessFamily& w) {
    std::ostringstream out;
    out << "witness " << w.n << ' ' << w.support_radius << '\n';
    for (std::size_t x = 0; x < w.dist.size(); ++x)
        for (const auto& [y, weight] : w.dist[x].weights)
            out << x << ' ' << y << ' ' << rat_num(weight) << ' ' << rat_den(weight)
                << '\n';
    return out.str();
}

WitnessFamily read_witness(const Graph& g, const std::string& text) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw InputError("witness file is empty");
    const auto header = tokens_of(lines[0]);
    if (header.size() != 3 || header[0] != "witness")
        bad_line("witness header must be `witness n r`", lines[0]);
    WitnessFamily w;
    w.n = static_cast<int>(parse_ll(header[1], lines[0]));
    w.support_radius = static_cast<int>(parse_ll(header[2], lines[0]));
    if (w.n < 1) bad_line("quality target must be at least 1", lines[0]);
    if (w.support_radius < 0) bad_line("support radius must be nonnegative", lines[0]);
    w.dist.resize(g.vertex_count());
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto toks = tokens_of(lines[i]);
        if (toks.size() != 4) bad_line("weight line must be `x y num den`", lines[i]);
        const int x = checked_vertex(g, parse_ll(toks[0], lines[i]), lines[i]);
        const int y = checked_vertex(g, parse_ll(toks[1], lines[i]), lines[i]);
        const long long num = parse_ll(toks[2], lines[i]);
        const long long den = parse_ll(toks[3], lines[i]);
        if (num <= 0 || den <= 0) bad_line("weights must be positive", lines[i]);
        auto& weights = w.dist[x].weights;
        if (!weights.empty() && weights.back().first >= y)
            bad_line("weights for a vertex must come in ascending support order",
                     lines[i]);
        weights.emplace_back(y, Rat(num, den));
    }
    BigInt grid = 1;
    for (int x = 0; x < g.vertex_count(); ++x) {
        if (w.dist[x].total() != 1)
            throw InputError("weights for vertex " + std::to_string(x) +
                             " sum to " + rat_string(w.dist[x].total()) + ", not 1");
        for (const auto& [y, weight] : w.dist[x].weights)
            grid = boost::multiprecision::lcm(grid, rat_den(weight));
    }
    w.grid = grid;
    return w;
}

std::string write_packing(const Packing& p) {
    std::ostringstream out;
    out << "packing k=" << p.diameter_bound << '\n';
    for (const VSet& tile : p.tiles) {
        for (std::size_t i = 0; i < tile.size(); ++i)
            out << (i ? " " : "") << tile[i];
        out << '\n';
    }
    return out.str();
}

Packing read_packing(const Graph& g, const std::string& text) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw InputError("packing file is empty");
    const auto header = tokens_of(lines[0]);
    if (header.size() != 2 || header[0] != "packing" || header[1].rfind("k=", 0) != 0)
        bad_line("packing header must be `packing k=<bound>`", lines[0]);
    const long long declared = parse_ll(header[1].substr(2), lines[0]);
    if (declared < 0) bad_line("diameter bound must be nonnegative", lines[0]);
    std::vector<VSet> tiles;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        VSet tile;
        for (const auto& tok : tokens_of(lines[i]))
            tile.push_back(checked_vertex(g, parse_ll(tok, lines[i]), lines[i]));
        std::sort(tile.begin(), tile.end());
        tiles.push_back(std::move(tile));
    }
    Packing p;
    if (tiles.empty()) {
        p.host = g.name;
    } else {
        p = make_packing(g, std::move(tiles));
        if (p.diameter_bound > declared)
            throw InputError("a tile has diameter " + std::to_string(p.diameter_bound) +
                             ", above the declared bound " + std::to_string(declared));
    }
    p.diameter_bound = static_cast<int>(declared);
    return p;
}

std::string write_multipacking(const Multipacking& mp) {
    std::ostringstream out;
    for (int i = 0; i < mp.m(); ++i) {
        if (i) out << "---\n";
        out << write_packing(mp.packings[i]);
    }
    return out.str();
}

Multipacking read_multipacking(const Graph& g, const std::string& text) {
    Multipacking mp;
    std::string block;
    auto flush = [&g, &mp, &block]() {
        if (block.empty()) throw InputError("empty packing block in multipacking");
        mp.packings.push_back(read_packing(g, block));
        block.clear();
    };
    const auto lines = split_lines(text);
    for (const std::string& line : lines) {
        if (line == "---") {
            flush();
        } else {
            block += line;
            block += '\n';
        }
    }
    if (!block.empty()) flush();
    return mp;
}

std::string write_coverage_rows(const Graph& g, const Multipacking& mp) {
    std::vector<int> covered(g.vertex_count(), 0);
    for (const Packing& member : mp.packings)
        for (const VSet& tile : member.tiles)
            for (int v : tile) ++covered[v];
    std::ostringstream out;
    out << "vertex, covered_count, m\n";
    for (int v = 0; v < g.vertex_count(); ++v)
        out << v << ", " << covered[v] << ", " << mp.m() << '\n';
    return out.str();
}

std::string write_measure(const Measure& mu) {
    std::ostringstream out;
    for (std::size_t v = 0; v < mu.mass.size(); ++v)
        out << v << ' ' << rat_num(mu.mass[v]) << ' ' << rat_den(mu.mass[v]) << '\n';
    return out.str();
}

Measure read_measure(const Graph& g, const std::string& text) {
    Measure mu;
    mu.mass.assign(g.vertex_count(), Rat(0));
    std::vector<char> seen(g.vertex_count(), 0);
    for (const std::string& line : split_lines(text)) {
        if (line.empty()) continue;
        const auto toks = tokens_of(line);
        if (toks.size() != 3) bad_line("measure line must be `vertex num den`", line);
        const int v = checked_vertex(g, parse_ll(toks[0], line), line);
        if (seen[v]) bad_line("vertex listed twice", line);
        seen[v] = 1;
        const long long num = parse_ll(toks[1], line);
        const long long den = parse_ll(toks[2], line);
        if (den <= 0) bad_line("denominator must be positive", line);
        mu.mass[v] = Rat(num, den);
    }
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!seen[v])
            throw InputError("measure is missing vertex " + std::to_string(v));
    validate_measure(g, mu);
    return mu;
}

std::string write_schedule(const CfwSchedule& schedule) {
    std::ostringstream out;
    out << "j eps s k D\n";
    for (const CfwLevel& row : schedule.levels)
        out << row.level << ' ' << rat_string(row.eps) << ' ' << row.separation << ' '
            << row.family_diameter << ' ' << row.branch_diameter << '\n';
    return out.str();
}

std::string write_trace(const QuasiTileTrace& trace) {
    std::ostringstream out;
    out << "mediators " << trace.mediator_count << " rounds_run " << trace.rounds_run
        << '\n';
    for (const QuasiTileStep& step : trace.steps)
        out << "step round=" << step.round << " mediator=" << step.mediator_index
            << " improvements=" << step.improvements << " alterations="
            << step.alteration_bound << '\n';
    for (std::size_t r = 0; r < trace.coverage_by_round.size(); ++r)
        for (std::size_t p = 0; p < trace.coverage_by_round[r].size(); ++p) {
            const Rat& c = trace.coverage_by_round[r][p];
            out << "coverage round=" << r << " probe=" << p << ' ' << rat_string(c)
                << ' ' << rat_decimal(c) << '\n';
        }
    return out.str();
}

namespace {

std::string ids_of(const VSet& s) {
    std::ostringstream out;
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i];
    return out.str();
}

}  // namespace

std::string write_audit(const OwAudit& audit) {
    std::ostringstream out;
    out << "audit eps=" << rat_string(audit.epsilon) << " eps_prime="
        << rat_string(audit.epsilon_prime) << '\n';
    out << "defect " << rat_string(audit.defect) << ' ' << rat_decimal(audit.defect)
        << '\n';
    out << "matchings " << (audit.matchings_ok ? "ok" : "broken") << '\n';
    out << "chain lhs=" << rat_string(audit.chain.lhs) << " matches="
        << rat_string(audit.chain.matches) << " marker_side="
        << rat_string(audit.chain.marker_side) << " epsilon_side="
        << rat_string(audit.chain.epsilon_side) << '\n';
    out << "uncovered_mass " << rat_string(audit.uncovered_mass) << ' '
        << rat_decimal(audit.uncovered_mass) << '\n';
    out << "markers " << ids_of(audit.markers) << '\n';
    for (const OwMarkerRow& row : audit.marker_rows)
        out << "marker_tile " << (row.carved ? "carved" : "counted") << " markers="
            << row.markers << " lower=" << rat_string(row.lower) << " upper="
            << rat_string(row.upper) << " tile=" << ids_of(row.tile) << '\n';
    for (const OwProbeRow& row : audit.probe_rows)
        out << "probe member=" << row.member << ' '
            << (row.exempt ? "exempt" : "counted") << " uncovered=" << row.uncovered
            << " markers=" << row.markers << " tile=" << ids_of(row.tile) << '\n';
    return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path.string());
    out << content;
    if (!out) throw InputError("write failed for " + path.string());
}

}  // namespace tiler
