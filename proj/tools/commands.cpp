#include "commands.hpp"

#include "carpet_recur/boxcount.hpp"
#include "carpet_recur/carpet.hpp"
#include "carpet_recur/dimtheory.hpp"
#include "carpet_recur/error.hpp"
#include "carpet_recur/io.hpp"
#include "carpet_recur/rate.hpp"
#include "carpet_recur/recur.hpp"
#include "carpet_recur/render.hpp"
#include "carpet_recur/sampler.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace carpet_recur::cli {

namespace {

struct Range {
    std::size_t first = 0;
    std::size_t last = 0;
};

Range parse_range(const std::string& text, const char* what) {
    auto colon = text.find(':');
    try {
        if (colon == std::string::npos) {
            auto v = static_cast<std::size_t>(parse_count(text));
            return {v, v};
        }
        Range r{static_cast<std::size_t>(parse_count(std::string_view(text).substr(0, colon))),
                static_cast<std::size_t>(parse_count(std::string_view(text).substr(colon + 1)))};
        if (r.last < r.first) fail(ErrorCode::InvalidArgument, std::string(what) + " range must not be decreasing");
        return r;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidArgument) throw;
        fail(ErrorCode::Parse, std::string("bad ") + what + " range '" + text + "' (expected <first>:<last>)");
    }
}

double parse_extended(std::string_view text) {
    if (text == "inf" || text == "+inf") return INFINITY;
    if (text == "-inf") return -INFINITY;
    return parse_rational(text).get_d();
}

std::vector<double> parse_weights(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rational(item).get_d());
    return out;
}

// Output to a file when a path is given, stdout otherwise.
class Output {
public:
    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") return;
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file_) fail(ErrorCode::Io, "cannot write '" + path + "'");
        path_ = path;
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }
    void finish() {
        stream().flush();
        if (!stream()) fail(ErrorCode::Io, "failed writing '" + (path_.empty() ? std::string("stdout") : path_) + "'");
    }

private:
    std::unique_ptr<std::ofstream> file_;
    std::string path_;
};

void add_dim(CLI::App& app) {
    auto* cmd = app.add_subcommand("dim", "Print the Hausdorff and box dimensions of a carpet");
    auto spec = std::make_shared<std::string>();
    cmd->add_option("spec", *spec, "Carpet spec file")->required();
    cmd->callback([spec] {
        Carpet c = load_carpet_spec(*spec);
        std::printf("hausdorff %.12g box %.12g uniform %s\n", hausdorff_dimension(c), box_dimension(c),
                    is_uniform_fibre(c) ? "true" : "false");
    });
}

void add_recur_dim(CLI::App& app) {
    struct Opts {
        std::string spec, rate, taus, tau_range, tau2, out;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = app.add_subcommand("recur-dim", "Tabulate the recurrent-set dimension over tau1");
    cmd->add_option("spec", o->spec, "Carpet spec file")->required();
    auto* rate = cmd->add_option("--rate", o->rate, "Rate spec, e.g. 'powexp t=1'");
    auto* taus = cmd->add_option("--tau", o->taus, "Comma-separated tau1 values ('inf' allowed)");
    auto* range = cmd->add_option("--tau-range", o->tau_range, "Evenly spaced grid <first>:<last>:<points>");
    rate->excludes(taus)->excludes(range);
    taus->excludes(range);
    cmd->add_option("--tau2-override", o->tau2, "Decouple tau2 from tau1 (exploratory)");
    cmd->add_option("--out", o->out, "Output CSV (default stdout)");
    cmd->callback([o] {
        Carpet c = load_carpet_spec(o->spec);
        std::vector<TauPair> pairs;
        if (!o->rate.empty()) {
            pairs.push_back(linked_taus(c, parse_rate_spec(o->rate, c.bases())));
        } else if (!o->taus.empty()) {
            std::stringstream ss(o->taus);
            std::string item;
            while (std::getline(ss, item, ',')) pairs.push_back(linked_taus(c, Tau::from_value(parse_extended(item))));
        } else if (!o->tau_range.empty()) {
            auto parts = std::vector<std::string>{};
            std::stringstream ss(o->tau_range);
            std::string item;
            while (std::getline(ss, item, ':')) parts.push_back(item);
            if (parts.size() != 3) fail(ErrorCode::Parse, "--tau-range expects <first>:<last>:<points>");
            double a = parse_rational(parts[0]).get_d();
            double b = parse_rational(parts[1]).get_d();
            auto k = parse_count(parts[2]);
            if (k < 2) fail(ErrorCode::InvalidArgument, "--tau-range needs at least two points");
            for (std::int64_t i = 0; i < k; ++i) {
                double t = a + (b - a) * static_cast<double>(i) / static_cast<double>(k - 1);
                pairs.push_back(linked_taus(c, Tau::from_value(t)));
            }
        } else {
            fail(ErrorCode::InvalidArgument, "give one of --rate, --tau or --tau-range");
        }
        if (!o->tau2.empty()) {
            double t2 = parse_extended(o->tau2);
            for (auto& p : pairs) {
                p.tau2 = t2;
                p.independent = true;
            }
        }
        Output out(o->out);
        write_dim_header(out.stream());
        for (const auto& p : pairs) write_dim_row(out.stream(), p, theorem_dimension(c, p));
        out.finish();
    });
}

void add_sample(CLI::App& app) {
    struct Opts {
        std::string spec, rate, out, weights;
        std::size_t depth = 0, count = 0, first = 6;
        std::uint64_t seed = 0;
        int margin = 2;
        unsigned threads = 1;
        bool coordinates = false;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = app.add_subcommand("sample", "Draw recurrent points from the digit-repetition measure");
    cmd->add_option("spec", o->spec, "Carpet spec file")->required();
    cmd->add_option("--rate", o->rate, "Rate spec (powexp only)")->required();
    cmd->add_option("--depth", o->depth, "Digits per coordinate")->required();
    cmd->add_option("--count", o->count, "Number of points")->required();
    cmd->add_option("--seed", o->seed, "Root seed")->required();
    cmd->add_option("--out", o->out, "Output point-cloud CSV (default stdout)");
    cmd->add_option("--margin", o->margin, "Schedule growth margin (>= 2)");
    cmd->add_option("--first", o->first, "First scheduled time n_1");
    cmd->add_option("--weights", o->weights, "Comma-separated probabilities in alphabet order (default uniform)");
    cmd->add_option("--threads", o->threads, "Worker threads");
    cmd->add_flag("--coordinates", o->coordinates, "Also write exact rational coordinates");
    cmd->callback([o] {
        Carpet c = load_carpet_spec(o->spec);
        RateFunction rate = parse_rate_spec(o->rate, c.bases());
        if (o->count == 0) fail(ErrorCode::InvalidArgument, "--count must be positive");
        ProbabilityVector p = o->weights.empty() ? ProbabilityVector::uniform(c)
                                                 : ProbabilityVector(c, parse_weights(o->weights));
        Schedule schedule = make_schedule(rate, o->depth, o->margin, o->first);
        SampleConfig cfg{c, p, rate, schedule, o->depth, o->seed};
        auto points = sample_points(cfg, o->count, o->threads);
        PointCloud cloud(c.bases(), o->depth, std::move(points), Provenance{o->seed});
        Output out(o->out);
        write_point_cloud(out.stream(), cloud, o->coordinates);
        out.finish();
    });
}

void add_estimate(CLI::App& app) {
    struct Opts {
        std::string cloud, levels, out;
        bool grid = false, two_scale = false, correct = false;
        unsigned threads = 1;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = app.add_subcommand("estimate", "Box-counting dimension estimate of a point cloud");
    cmd->add_option("cloud", o->cloud, "Point-cloud CSV")->required();
    cmd->add_option("--levels", o->levels, "Level range <first>:<last>")->required();
    cmd->add_flag("--grid", o->grid, "Count Euclidean grid boxes instead of approximate squares");
    cmd->add_flag("--two-scale", o->two_scale, "Fit horizontal and vertical exponents separately");
    cmd->add_flag("--correct", o->correct, "Add the Chao1 estimate of unseen boxes to each count");
    cmd->add_option("--threads", o->threads, "Worker threads");
    cmd->add_option("--out", o->out, "Output CSV (default stdout)");
    cmd->callback([o] {
        auto cloud = load_point_cloud(o->cloud);
        auto r = parse_range(o->levels, "level");
        EstimateOptions opts;
        opts.counter = o->grid ? Counter::EuclideanGrid : Counter::ApproximateSquares;
        opts.model = o->two_scale ? Model::TwoScale : Model::SingleScale;
        opts.coverage_correction = o->correct;
        opts.threads = o->threads;
        auto est = estimate_dimension(cloud, r.first, r.last, opts);
        if (est.saturated) {
            std::cerr << "carpet-recur: warning: top-level count " << est.counts.back().count
                      << " is at least a tenth of the cloud size; raw counts are saturated\n";
        }
        Output out(o->out);
        write_estimate(out.stream(), est);
        out.finish();
    });
}

void add_verify_cover(CLI::App& app) {
    struct Opts {
        std::string spec, rate, n, out;
        int coord = 1;
        unsigned threads = 1;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = app.add_subcommand("verify-cover", "Compare exact cover counts with the printed bounds");
    cmd->add_option("spec", o->spec, "Carpet spec file")->required();
    cmd->add_option("--rate", o->rate, "Rate spec")->required();
    cmd->add_option("--n", o->n, "Range of n, <first>:<last>")->required();
    cmd->add_option("--coord", o->coord, "Covering coordinate i (1 or 2)")->required();
    cmd->add_option("--threads", o->threads, "Worker threads");
    cmd->add_option("--out", o->out, "Output CSV (default stdout)");
    cmd->callback([o] {
        Carpet c = load_carpet_spec(o->spec);
        RateFunction rate = parse_rate_spec(o->rate, c.bases());
        auto r = parse_range(o->n, "n");
        if (!c.fibre_size()) fail(ErrorCode::NonUniformFibre, "cover bounds need a uniform-fibre carpet");
        auto reports = verify_covering(c, rate, r.first, r.last, parse_axis(o->coord), CoverBudget::from_env(),
                                       o->threads);
        Output out(o->out);
        write_cover_reports(out.stream(), reports);
        out.finish();
        for (const auto& rep : reports) {
            if (!rep.satisfied) {
                std::cerr << "carpet-recur: warning: n = " << rep.n << " count " << rep.exact_count
                          << " exceeds the bound " << format_real(rep.bound) << '\n';
            }
        }
    });
}

void add_render(CLI::App& app) {
    struct Opts {
        std::string carpet, cloud, out;
        int resolution = 0;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = app.add_subcommand("render", "Rasterise a carpet or a point cloud to PGM");
    auto* carpet = cmd->add_option("--carpet", o->carpet, "Carpet spec file");
    auto* cloud = cmd->add_option("--cloud", o->cloud, "Point-cloud CSV");
    carpet->excludes(cloud);
    cmd->add_option("--resolution", o->resolution, "Image side in pixels")->required();
    cmd->add_option("--out", o->out, "Output PGM file")->required();
    cmd->callback([o] {
        Image img;
        if (!o->carpet.empty()) img = render_carpet(load_carpet_spec(o->carpet), o->resolution);
        else if (!o->cloud.empty()) img = render_cloud(load_point_cloud(o->cloud), o->resolution);
        else fail(ErrorCode::InvalidArgument, "give --carpet or --cloud");
        write_pgm(img, o->out);
    });
}

}  // namespace

void register_commands(CLI::App& app) {
    add_dim(app);
    add_recur_dim(app);
    add_sample(app);
    add_estimate(app);
    add_verify_cover(app);
    add_render(app);
}

}  // namespace carpet_recur::cli
