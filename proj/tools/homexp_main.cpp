// homexp: command-line front end over the homexp library.
//
// Exit codes: 0 success, 1 usage error, 2 argument/precondition violation,
// 3 resource budget exceeded.  Reports go to standard output; errors are
// single "error: <category>: <message>" lines on standard error.

#include <cmath>
#include <deque>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "homexp/cavity.hpp"
#include "homexp/cluster.hpp"
#include "homexp/config.hpp"
#include "homexp/enumeration.hpp"
#include "homexp/errors.hpp"
#include "homexp/graph.hpp"
#include "homexp/grids.hpp"
#include "homexp/homcount.hpp"
#include "homexp/invariants.hpp"
#include "homexp/inversion.hpp"
#include "homexp/localstats.hpp"
#include "homexp/numeric.hpp"
#include "homexp/polymer.hpp"
#include "homexp/report.hpp"
#include "homexp/weighted.hpp"

namespace {

using namespace homexp;

void apply_threads(const RunConfig& config) {
    if (config.threads < 0)
        throw argument_error("--threads must be >= 0");
#if defined(_OPENMP)
    if (config.threads > 0) omp_set_num_threads(config.threads);
#endif
}

void require_float(const RunConfig& config, const std::string& name) {
    if (config.exact)
        throw argument_error(name +
                             " runs in float mode only; drop --exact");
}

// First word of the file, used to tell simple graph files ("graph <n>")
// from weighted ones ("wgraph <q>").
std::string sniff_file_kind(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw argument_error("cannot open file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string tag;
        if (row >> tag && tag[0] != '#') return tag;
    }
    throw argument_error("empty graph file: " + path);
}

std::vector<Rational> load_vector(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw argument_error("cannot open vector file: " + path);
    std::vector<Rational> values;
    std::string token;
    while (in >> token) values.push_back(parse_rational(token));
    return values;
}

std::vector<double> to_double_vector(const std::vector<Rational>& values) {
    std::vector<double> out;
    out.reserve(values.size());
    for (const Rational& v : values) out.push_back(to_double(v));
    return out;
}

GridKind parse_grid_kind(std::string name) {
    if (name == "pathxpath") name = "grid";
    if (name == "cyclexpath") name = "cylinder";
    if (name == "cyclexcycle") name = "torus";
    return grid_kind_from_name(name);
}

// Resolves "-X flag or next positional" file arguments, in declaration
// order, so both `hom -F a.graph -G b.graph` and `hom a.graph b.graph`
// work.
class FileArgs {
public:
    explicit FileArgs(const std::vector<std::string>& positionals)
        : positionals_(positionals.begin(), positionals.end()) {}

    std::string take(const std::string& flagged, const std::string& what) {
        if (!flagged.empty()) return flagged;
        if (!positionals_.empty()) {
            std::string path = positionals_.front();
            positionals_.pop_front();
            return path;
        }
        throw CLI::RequiredError(what);
    }

    void finish() const {
        if (!positionals_.empty())
            throw argument_error("unexpected extra file argument: " +
                                 positionals_.front());
    }

private:
    std::deque<std::string> positionals_;
};

// ---------------------------------------------------------------------------
// Subcommand option blocks.

struct TwoFileOpts {
    std::vector<std::string> files;
    std::string first;
    std::string second;
};

struct LntOpts : TwoFileOpts {
    std::string method;
    int k = 3;
    double b = 0.4;
    int radius = 2;
    int samples = 200;
};

struct ChromOpts {
    std::string file;
    long long at = 0;
    bool has_at = false;
};

struct EnumOpts {
    std::string file;
    std::string kind;
    int max_nodes = 0;
};

struct VectorOpts {
    std::string file;
    std::string x_file;
    int m_max = 3;
};

struct BallsOpts {
    std::string file;
    int radius = 1;
};

struct LdistOpts {
    std::string first;
    std::string second;
    int radius = 1;
};

struct InvertOpts {
    std::string file;
    std::string flag_g;
    int m = 2;
    int q = 0;
};

struct GridOpts {
    std::string kind;
    int n = 0;
    int m = 0;
    std::string target;
    std::vector<int> sizes;
    bool square = false;
};

struct CheckOpts {
    std::string target;
    int degree = 3;
    double b = 0.4;
};

// ---------------------------------------------------------------------------
// Commands.

void cmd_hom(const RunConfig& config, const TwoFileOpts& opt) {
    FileArgs args(opt.files);
    std::string pattern_path = args.take(opt.first, "pattern file (-F)");
    std::string target_path = args.take(opt.second, "target file (-G)");
    args.finish();

    SimpleGraph pattern = SimpleGraph::load(pattern_path);
    Report report(config);
    if (sniff_file_kind(target_path) == "wgraph") {
        if (config.exact) {
            Rational value = hom_count(
                pattern, RationalWeightedGraph::load(target_path),
                config.budget);
            report.scalar("hom", format_exact(value));
        } else {
            double value = hom_count(pattern, WeightedGraph::load(target_path),
                                     config.budget);
            report.scalar("hom", format_double(value));
        }
    } else {
        BigInt value = hom_count(pattern, SimpleGraph::load(target_path),
                                 config.budget);
        report.scalar("hom", value.str());
    }
    report.write(std::cout);
}

void cmd_z(const RunConfig& config, const TwoFileOpts& opt) {
    FileArgs args(opt.files);
    std::string graph_path = args.take(opt.first, "graph file (-G)");
    std::string target_path = args.take(opt.second, "target file (-H)");
    args.finish();

    SimpleGraph g = SimpleGraph::load(graph_path);
    Report report(config);
    if (config.exact) {
        Rational value = z_value(g, RationalWeightedGraph::load(target_path),
                                 config.budget);
        report.scalar("z", format_exact(value));
    } else {
        double value =
            z_value(g, WeightedGraph::load(target_path), config.budget);
        report.scalar("z", format_double(value));
    }
    report.write(std::cout);
}

void cmd_chrom(const RunConfig& config, const ChromOpts& opt) {
    SimpleGraph g = SimpleGraph::load(opt.file);
    ChromaticPolynomial chi = chromatic_polynomial(g);
    Report report(config);
    if (opt.has_at) {
        Rational value = chi.evaluate(Rational(opt.at));
        report.scalar("chromatic(" + std::to_string(opt.at) + ")",
                      format_exact(value));
    } else {
        report.table({"power", "coefficient"});
        for (std::size_t i = 0; i < chi.coefficients.size(); ++i)
            report.row({std::to_string(i), format_exact(chi.coefficients[i])});
    }
    report.write(std::cout);
}

void cmd_crapo(const RunConfig& config, const std::string& path) {
    Report report(config);
    if (sniff_file_kind(path) == "wgraph") {
        if (config.exact)
            report.scalar("crapo",
                          format_exact(weighted_crapo(
                              RationalWeightedGraph::load(path),
                              config.budget)));
        else
            report.scalar("crapo",
                          format_double(weighted_crapo(
                              WeightedGraph::load(path), config.budget)));
    } else {
        report.scalar("crapo", crapo_invariant(SimpleGraph::load(path)).str());
    }
    report.write(std::cout);
}

void cmd_treesum(const RunConfig& config, const std::string& path) {
    Report report(config);
    if (sniff_file_kind(path) == "wgraph") {
        if (config.exact)
            report.scalar("treesum",
                          format_exact(weighted_tree_sum(
                              RationalWeightedGraph::load(path),
                              config.budget)));
        else
            report.scalar("treesum",
                          format_double(weighted_tree_sum(
                              WeightedGraph::load(path), config.budget)));
    } else {
        report.scalar("treesum",
                      spanning_tree_count(SimpleGraph::load(path)).str());
    }
    report.write(std::cout);
}

void cmd_enum(const RunConfig& config, const EnumOpts& opt) {
    SimpleGraph g = SimpleGraph::load(opt.file);
    FamilyKind kind = family_kind_from_name(opt.kind);
    int max_nodes = opt.max_nodes > 0 ? opt.max_nodes : g.node_count();
    SubgraphFamily family = enumerate_family(g, kind, max_nodes, config.budget);

    Report report(config);
    report.note("kind", family_kind_name(kind));
    report.note("count", std::to_string(family.members.size()));
    for (const FamilyMember& member : family.members) {
        std::string line;
        for (std::size_t i = 0; i < member.nodes.size(); ++i) {
            if (i) line += ' ';
            line += std::to_string(member.nodes[i]);
        }
        report.raw(line);
    }
    report.write(std::cout);
}

void cmd_stab(const RunConfig& config, const VectorOpts& opt) {
    SimpleGraph g = SimpleGraph::load(opt.file);
    std::vector<Rational> x = load_vector(opt.x_file);
    if (static_cast<int>(x.size()) != g.node_count())
        throw argument_error("activity vector has " +
                             std::to_string(x.size()) + " entries for " +
                             std::to_string(g.node_count()) + " nodes");
    Report report(config);
    if (config.exact)
        report.scalar("stab",
                      format_exact(stab_polynomial(g, x, config.budget)));
    else
        report.scalar("stab", format_double(stab_polynomial(
                                  g, to_double_vector(x), config.budget)));
    report.write(std::cout);
}

void cmd_mayer(const RunConfig& config, const VectorOpts& opt) {
    require_float(config, "mayer");
    SimpleGraph g = SimpleGraph::load(opt.file);
    std::vector<Rational> x = load_vector(opt.x_file);
    if (static_cast<int>(x.size()) != g.node_count())
        throw argument_error("activity vector has " +
                             std::to_string(x.size()) + " entries for " +
                             std::to_string(g.node_count()) + " nodes");
    CertifiedLog log =
        mayer_log_stab(g, to_double_vector(x), opt.m_max, config.budget);

    Report report(config);
    report.note("certified_radius", format_double(log.error_radius));
    report.note("valid", format_bool(log.certified()));
    report.table({"value", "error_radius", "valid"});
    report.row({format_double(log.value), format_double(log.error_radius),
                format_bool(log.certified())});
    report.write(std::cout);
}

void cmd_lnt(const RunConfig& config, const LntOpts& opt) {
    require_float(config, "lnt");
    FileArgs args(opt.files);
    std::string graph_path = args.take(opt.first, "graph file (-G)");
    std::string target_path = args.take(opt.second, "target file (-H)");
    args.finish();

    SimpleGraph g = SimpleGraph::load(graph_path);
    WeightedGraph h = WeightedGraph::load(target_path);
    Report report(config);

    if (opt.method == "cluster") {
        CertifiedLog log = truncated_ln_t(g, h, opt.k, opt.b, config.budget);
        report.note("method", "cluster");
        report.note("certified_radius", format_double(log.error_radius));
        report.note("valid", format_bool(log.certified()));
        report.table({"value", "error_radius", "valid"});
        report.row({format_double(log.value), format_double(log.error_radius),
                    format_bool(log.certified())});
    } else if (opt.method == "cavity") {
        CavityConfig cavity;
        cavity.radius = opt.radius;
        cavity.ordering_samples = opt.samples;
        cavity.seed = config.seed;
        LocalEstimate estimate =
            local_estimate_details(g, h, cavity, config.budget);
        report.note("method", "cavity");
        report.note("certified_radius",
                    format_double(estimate.log.error_radius));
        report.note("valid", format_bool(estimate.log.certified()));
        report.table({"value", "error_radius", "kappa"});
        report.row({format_double(estimate.log.value),
                    format_double(estimate.log.error_radius),
                    format_double(estimate.kappa)});
    } else if (opt.method == "exact") {
        double t = density(g, h, config.budget);
        if (!(t > 0.0))
            throw precondition_error("t(G,H) vanishes; ln t undefined");
        double value = std::log(t) / g.node_count();
        report.note("method", "exact");
        report.note("certified_radius", "0");
        report.note("valid", "true");
        report.table({"value", "error_radius", "valid"});
        report.row({format_double(value), "0", "true"});
    } else {
        throw argument_error("unknown lnt method '" + opt.method +
                             "' (expected cluster, cavity, or exact)");
    }
    report.write(std::cout);
}

void cmd_balls(const RunConfig& config, const BallsOpts& opt) {
    SimpleGraph g = SimpleGraph::load(opt.file);
    NeighborhoodHistogram hist = histogram(g, opt.radius);
    Report report(config);
    report.note("radius", std::to_string(opt.radius));
    report.table({"encoding", "frequency"});
    for (const auto& [ball, frequency] : hist.frequencies)
        report.row({hex_encoding(ball),
                    config.exact ? format_exact(frequency)
                                 : format_double(to_double(frequency))});
    report.write(std::cout);
}

void cmd_ldist(const RunConfig& config, const LdistOpts& opt) {
    SimpleGraph g1 = SimpleGraph::load(opt.first);
    SimpleGraph g2 = SimpleGraph::load(opt.second);
    Rational distance = local_distance(g1, g2, opt.radius);
    Report report(config);
    report.note("radius", std::to_string(opt.radius));
    report.scalar("local_distance", config.exact
                                        ? format_exact(distance)
                                        : format_double(to_double(distance)));
    report.write(std::cout);
}

void cmd_invert(const RunConfig& config, const InvertOpts& opt) {
    require_float(config, "invert");
    std::string path = !opt.flag_g.empty() ? opt.flag_g : opt.file;
    if (path.empty()) throw CLI::RequiredError("graph file (-G)");
    SimpleGraph g = SimpleGraph::load(path);

    InversionSystem system =
        build_system(build_family(opt.m), opt.q, 0, false, 1.0, config.budget);
    std::vector<double> recovered = recover_counts(g, system, config.budget);

    Report report(config);
    report.note("m", std::to_string(opt.m));
    report.note("q", std::to_string(opt.q));
    report.note("condition_number", format_double(system.condition_number));
    report.note("residual_bound", format_double(system.residual_bound));
    report.table({"F_i", "recovered", "exact", "abs_error"});
    for (int i = 0; i < system.reported; ++i) {
        HomCounts counts =
            inj_ind_surj_aut(system.family.members[i], g, config.budget);
        double exact = to_double(counts.inj0);
        report.row({"F_" + std::to_string(i), format_double(recovered[i]),
                    format_double(exact),
                    format_double(std::abs(recovered[i] - exact))});
    }
    report.write(std::cout);
}

void cmd_grid(const RunConfig& config, const GridOpts& opt) {
    require_float(config, "grid");
    if (opt.target.empty()) throw CLI::RequiredError("target file (-H)");
    WeightedGraph h = WeightedGraph::load(opt.target);
    double value =
        grid_ln_hom(parse_grid_kind(opt.kind), opt.n, opt.m, h, config.budget);
    Report report(config);
    report.note("kind", grid_kind_name(parse_grid_kind(opt.kind)));
    report.note("n", std::to_string(opt.n));
    report.note("m", std::to_string(opt.m));
    report.scalar("ln_hom_per_node", format_double(value));
    report.write(std::cout);
}

void cmd_gridconv(const RunConfig& config, const GridOpts& opt) {
    require_float(config, "gridconv");
    if (opt.target.empty()) throw CLI::RequiredError("target file (-H)");
    if (opt.sizes.empty())
        throw CLI::RequiredError("size schedule (-n n1,n2,...)");
    WeightedGraph h = WeightedGraph::load(opt.target);
    std::vector<std::pair<int, int>> sizes;
    for (int n : opt.sizes)
        sizes.emplace_back(n, opt.square ? n : opt.m);
    GridConvergenceTable table = convergence_experiment(
        parse_grid_kind(opt.kind), h, sizes, config.budget);

    // The convergence table is a CSV artifact regardless of --format.
    RunConfig csv_config = config;
    csv_config.format = "csv";
    Report report(csv_config);
    report.note("kind", grid_kind_name(parse_grid_kind(opt.kind)));
    if (!table.warning.empty()) report.note("warning", table.warning);
    report.table({"n", "m", "value", "delta"});
    for (const GridConvergenceRow& row : table.rows)
        report.row({std::to_string(row.n), std::to_string(row.m),
                    format_double(row.value), format_double(row.delta)});
    report.write(std::cout);
}

void run_self_checks() {
    struct Check {
        const char* name;
        bool ok;
    };
    RationalWeightedGraph h(
        {Rational(1), Rational(2)},
        {Rational(1), Rational(1, 2), Rational(1, 2), Rational(0)});
    PolymerSystemT<Rational> system =
        polymer_system_from(SimpleGraph::cycle(4), h, 4);
    double hardcore_path =
        grid_ln_hom(GridKind::PathPath, 5, 1, hardcore_weighted_graph(1.0));
    std::vector<Check> checks = {
        {"hom(C_5,K_3)",
         hom_count(SimpleGraph::cycle(5), SimpleGraph::complete(3)) == 30},
        {"chromatic(C_5) at 3",
         chromatic_polynomial(SimpleGraph::cycle(5)).evaluate(3) == 30},
        {"z inversion", z_inversion_check(SimpleGraph::cycle(4), h)},
        {"local distance C_10/P_10",
         local_distance(SimpleGraph::cycle(10), SimpleGraph::path(10), 1) ==
             Rational(1, 5)},
        {"stable-set identity",
         stab_polynomial(system.polymer_graph, system.activities) ==
             density(SimpleGraph::cycle(4), h)},
        {"hardcore path count",
         std::abs(std::exp(hardcore_path * 5) * 32 - 13.0) < 1e-9},
    };
    for (const Check& check : checks)
        if (!check.ok)
            throw precondition_error(std::string("self-check failed: ") +
                                     check.name);
}

void cmd_check(const RunConfig& config, const CheckOpts& opt) {
    Report report(config);
    if (opt.target.empty()) {
        run_self_checks();
        report.raw("self-check: ok");
        report.write(std::cout);
        return;
    }
    WeightedGraph h = WeightedGraph::load(opt.target);
    if (opt.degree < 1) throw argument_error("-D must be >= 1");
    ExpansionConstants constants =
        expansion_constants(opt.degree, h, opt.b);
    double kappa = 2.0 * opt.degree * constants.c_bar;
    report.note("D", std::to_string(opt.degree));
    report.note("b", format_double(opt.b));
    report.scalar("c_bar", format_double(constants.c_bar));
    report.scalar("K", format_double(constants.K));
    report.scalar("epsilon", format_double(constants.epsilon));
    report.scalar("kappa", format_double(kappa));
    report.scalar("cluster_valid", format_bool(constants.valid));
    report.scalar("cavity_valid",
                  format_bool(constants.c_bar < 1.0 / (2.0 * opt.degree)));
    report.write(std::cout);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "homexp: exact and certified-approximate graph homomorphism "
        "partition functions"};
    app.require_subcommand(1);

    RunConfig config;
    app.add_flag("--exact", config.exact,
                 "exact rational arithmetic where supported");
    app.add_option("--seed", config.seed, "master seed for randomized runs")
        ->capture_default_str();
    app.add_option("--threads", config.threads,
                   "worker threads (0 = library default)")
        ->capture_default_str();
    app.add_option("--format", config.format, "output format")
        ->check(CLI::IsMember({"plain", "csv"}))
        ->capture_default_str();

    auto add_files = [](CLI::App* sub, TwoFileOpts& opt, const char* first,
                        const char* second) {
        sub->add_option("files", opt.files, "input files, in option order")
            ->expected(0, 2);
        sub->add_option(first, opt.first);
        sub->add_option(second, opt.second);
    };

    auto hom_opt = std::make_shared<TwoFileOpts>();
    CLI::App* hom = app.add_subcommand("hom", "hom(F,G) for graph files");
    add_files(hom, *hom_opt, "-F,--pattern", "-G,--target");
    hom->callback([hom_opt, &config] {
        apply_threads(config);
        cmd_hom(config, *hom_opt); });

    auto z_opt = std::make_shared<TwoFileOpts>();
    CLI::App* z = app.add_subcommand("z", "z(G,H) alternating CSpan sum");
    add_files(z, *z_opt, "-G,--graph", "-H,--target");
    z->callback([z_opt, &config] {
        apply_threads(config);
        cmd_z(config, *z_opt); });

    auto chrom_opt = std::make_shared<ChromOpts>();
    CLI::App* chrom =
        app.add_subcommand("chrom", "chromatic polynomial coefficients");
    chrom->add_option("graph", chrom_opt->file)->required();
    chrom->add_option("--at", chrom_opt->at, "evaluate at this color count");
    chrom->callback([chrom_opt, chrom, &config] {
        apply_threads(config);
        chrom_opt->has_at = chrom->count("--at") > 0;
        cmd_chrom(config, *chrom_opt);
    });

    auto crapo_opt = std::make_shared<std::string>();
    CLI::App* crapo = app.add_subcommand("crapo", "Crapo invariant cr");
    crapo->add_option("graph", *crapo_opt)->required();
    crapo->callback([crapo_opt, &config] {
        apply_threads(config);
        cmd_crapo(config, *crapo_opt); });

    auto tree_opt = std::make_shared<std::string>();
    CLI::App* treesum =
        app.add_subcommand("treesum", "spanning-tree count or weighted sum");
    treesum->add_option("graph", *tree_opt)->required();
    treesum->callback([tree_opt, &config] {
        apply_threads(config);
        cmd_treesum(config, *tree_opt); });

    auto enum_opt = std::make_shared<EnumOpts>();
    CLI::App* enumerate =
        app.add_subcommand("enum", "enumerate a subgraph family");
    enumerate->add_option("graph", enum_opt->file)->required();
    enumerate->add_option("--kind", enum_opt->kind,
                          "sub, con, cind, cspan, or sptr")
        ->required();
    enumerate->add_option("--max-nodes", enum_opt->max_nodes,
                          "node-count cap (0 = all)");
    enumerate->callback([enum_opt, &config] {
        apply_threads(config);
        cmd_enum(config, *enum_opt); });

    auto stab_opt = std::make_shared<VectorOpts>();
    CLI::App* stab =
        app.add_subcommand("stab", "multivariate stable-set polynomial");
    stab->add_option("graph", stab_opt->file)->required();
    stab->add_option("--x", stab_opt->x_file, "activity vector file")
        ->required();
    stab->callback([stab_opt, &config] {
        apply_threads(config);
        cmd_stab(config, *stab_opt); });

    auto mayer_opt = std::make_shared<VectorOpts>();
    CLI::App* mayer =
        app.add_subcommand("mayer", "truncated Mayer expansion of ln stab");
    mayer->add_option("graph", mayer_opt->file)->required();
    mayer->add_option("--x", mayer_opt->x_file, "activity vector file")
        ->required();
    mayer->add_option("--mmax", mayer_opt->m_max, "truncation order")
        ->capture_default_str();
    mayer->callback([mayer_opt, &config] {
        apply_threads(config);
        cmd_mayer(config, *mayer_opt); });

    auto lnt_opt = std::make_shared<LntOpts>();
    CLI::App* lnt =
        app.add_subcommand("lnt", "estimates of ln t(G,H) per node");
    add_files(lnt, *lnt_opt, "-G,--graph", "-H,--target");
    lnt->add_option("--method", lnt_opt->method, "cluster, cavity, or exact")
        ->required();
    lnt->add_option("-k", lnt_opt->k, "cluster truncation order")
        ->capture_default_str();
    lnt->add_option("-b", lnt_opt->b, "cluster convergence parameter")
        ->capture_default_str();
    lnt->add_option("-r", lnt_opt->radius, "cavity ball radius")
        ->capture_default_str();
    lnt->add_option("--samples", lnt_opt->samples,
                    "cavity ordering samples per ball class")
        ->capture_default_str();
    lnt->callback([lnt_opt, &config] {
        apply_threads(config);
        cmd_lnt(config, *lnt_opt); });

    auto balls_opt = std::make_shared<BallsOpts>();
    CLI::App* balls =
        app.add_subcommand("balls", "r-ball isomorphism-class histogram");
    balls->add_option("graph", balls_opt->file)->required();
    balls->add_option("-r", balls_opt->radius, "ball radius")
        ->capture_default_str();
    balls->callback([balls_opt, &config] {
        apply_threads(config);
        cmd_balls(config, *balls_opt); });

    auto ldist_opt = std::make_shared<LdistOpts>();
    CLI::App* ldist =
        app.add_subcommand("ldist", "local (neighborhood) distance");
    ldist->add_option("graph1", ldist_opt->first)->required();
    ldist->add_option("graph2", ldist_opt->second)->required();
    ldist->add_option("-r", ldist_opt->radius, "ball radius")
        ->capture_default_str();
    ldist->callback([ldist_opt, &config] {
        apply_threads(config);
        cmd_ldist(config, *ldist_opt); });

    auto invert_opt = std::make_shared<InvertOpts>();
    CLI::App* invert = app.add_subcommand(
        "invert", "recover subgraph densities from hom values");
    invert->add_option("graph", invert_opt->file);
    invert->add_option("-G", invert_opt->flag_g, "graph file");
    invert->add_option("-m", invert_opt->m, "family node-count bound")
        ->capture_default_str();
    invert->add_option("-q", invert_opt->q, "target size")->required();
    invert->callback([invert_opt, &config] {
        apply_threads(config);
        cmd_invert(config, *invert_opt); });

    auto grid_opt = std::make_shared<GridOpts>();
    CLI::App* grid =
        app.add_subcommand("grid", "ln hom per node of a grid graph");
    grid->add_option("--kind", grid_opt->kind,
                     "grid (pathxpath), cylinder (cyclexpath), or torus "
                     "(cyclexcycle)")
        ->required();
    grid->add_option("-n", grid_opt->n, "first factor length")->required();
    grid->add_option("-m", grid_opt->m, "second factor length")->required();
    grid->add_option("-H,--target", grid_opt->target, "weighted target file");
    grid->callback([grid_opt, &config] {
        apply_threads(config);
        cmd_grid(config, *grid_opt); });

    auto conv_opt = std::make_shared<GridOpts>();
    CLI::App* gridconv =
        app.add_subcommand("gridconv", "grid convergence table (CSV)");
    gridconv->add_option("--kind", conv_opt->kind, "grid, cylinder, or torus")
        ->required();
    gridconv->add_option("-n", conv_opt->sizes, "first factor lengths")
        ->delimiter(',');
    gridconv->add_option("-m", conv_opt->m, "second factor length");
    gridconv->add_flag("--square", conv_opt->square, "use n x n sizes");
    gridconv->add_option("-H,--target", conv_opt->target,
                         "weighted target file");
    gridconv->callback([conv_opt, &config] {
        apply_threads(config);
        cmd_gridconv(config, *conv_opt); });

    auto check_opt = std::make_shared<CheckOpts>();
    CLI::App* check = app.add_subcommand(
        "check", "self-check, or condition report for a target");
    check->add_option("-H,--target", check_opt->target,
                      "weighted target file");
    check->add_option("-D", check_opt->degree, "host max degree")
        ->capture_default_str();
    check->add_option("-b", check_opt->b, "cluster convergence parameter")
        ->capture_default_str();
    check->callback([check_opt, &config] {
        apply_threads(config);
        cmd_check(config, *check_opt); });

    for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        config.budget = default_budget();
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: usage: " << e.what() << "\n\n"
                  << app.help() << std::flush;
        return 1;
    } catch (const resource_error& e) {
        std::cerr << "error: resource: " << e.what() << "\n";
        return 3;
    } catch (const argument_error& e) {
        std::cerr << "error: argument: " << e.what() << "\n";
        return 2;
    } catch (const precondition_error& e) {
        std::cerr << "error: precondition: " << e.what() << "\n";
        return 2;
    } catch (const homexp::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
