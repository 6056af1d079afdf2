#include "commands.hpp"

#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "opsel/config.hpp"
#include "opsel/image_io.hpp"
#include "opsel/log.hpp"
#include "opsel/model_io.hpp"
#include "opsel/orchestrator.hpp"
#include "opsel/synth.hpp"

namespace opsel::cli {
namespace {

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        err << "error[" << e.code() << "]: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error[E_INTERNAL]: " << e.what() << '\n';
    }
    return kExitFailure;
}

std::string fixed(double v, int digits = 6) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

void print_ranking(const LearnedModel& model, std::ostream& out) {
    out << std::left << std::setw(6) << "rank" << std::setw(4) << "" << std::setw(36) << "combination"
        << std::setw(12) << "quality" << std::setw(10) << "actions" << "best action\n";
    for (std::size_t i = 0; i < model.results.size(); ++i) {
        const PaResult& r = model.results[i];
        const ActionSpace space(r.combination);
        out << std::left << std::setw(6) << (i + 1) << std::setw(4) << (i == 0 ? "*" : "")
            << std::setw(36) << ("C" + std::to_string(r.combination_index + 1) + " " + r.combination.label())
            << std::setw(12) << fixed(r.quality) << std::setw(10) << r.action_space_size
            << format_action(space, r.best_action) << '\n';
    }
    for (const auto& f : model.failures) out << "failed: " << f.combination << ": " << f.reason << '\n';
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

int cmd_learn(const LearnArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const TaskConfig cfg = load_config(args.config);
        RunOptions options;
        options.workers = args.workers;
        options.only = args.combinations;
        const LearnedModel model = run(cfg, options);
        save_model(model, args.out);
        print_ranking(model, out);
        out << "model written to " << args.out.string() << '\n';
        return kExitOk;
    });
}

int cmd_apply(const std::filesystem::path& model_path, const std::filesystem::path& input,
              const std::filesystem::path& output, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const LearnedModel model = load_model(model_path);
        const GrayImage img = load_gray(input);
        save_binary(apply_model(model, img), output);
        out << "wrote " << output.string() << '\n';
        return kExitOk;
    });
}

int cmd_gen_dataset(const GenArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        SynthOptions options;
        options.count = args.count;
        options.seed = args.seed;
        options.noise = args.noise;
        options.width = args.size;
        options.height = args.size;
        const auto files = write_dataset(generate_dataset(options), args.out, args.suffix);
        out << "wrote " << files.size() << " files to " << args.out.string() << '\n';
        return kExitOk;
    });
}

int cmd_inspect(const std::filesystem::path& model_path, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const LearnedModel model = load_model(model_path);
        const PaResult& w = model.winner();
        const ActionSpace space(w.combination);
        out << "winner: " << w.combination.label() << '\n';
        const auto instances = space.instances(w.best_action.index);
        for (const auto& inst : instances) {
            out << "  " << inst.spec->name;
            for (std::size_t i = 0; i < inst.values.size(); ++i) {
                out << ' ' << inst.spec->param_names[i] << '=' << format_param(inst.values[i]);
            }
            out << '\n';
        }
        out << "action: " << format_action(space, w.best_action) << " (index " << w.best_action.index << ")\n";
        out << "quality: " << fixed(w.quality) << "\n\n";
        print_ranking(model, out);
        out << '\n';
        for (const auto& r : model.results) {
            out << "per-image D, " << r.combination.label() << ":";
            for (std::size_t i = 0; i < r.per_image_d.size(); ++i) {
                out << (i % 8 == 0 ? "\n  " : " ") << fixed(r.per_image_d[i], 4);
            }
            out << '\n';
        }
        return kExitOk;
    });
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Learns the best image-processing pipeline and its parameters for a class of images."};
    app.require_subcommand(1);
    bool verbose = false;
    bool quiet = false;
    app.add_flag("-v,--verbose", verbose, "Debug logging");
    app.add_flag("-q,--quiet", quiet, "Only log errors");

    LearnArgs learn;
    std::string combos;
    auto* learn_cmd = app.add_subcommand("learn", "Train one learner per operator combination");
    learn_cmd->add_option("--config", learn.config, "Task config (JSON)")->required();
    learn_cmd->add_option("--out", learn.out, "Model file to write")->required();
    learn_cmd->add_option("--workers", learn.workers, "Concurrent learners")->check(CLI::PositiveNumber);
    learn_cmd->add_option("--combinations", combos, "Comma-separated labels or C<k> positions");

    std::filesystem::path model;
    std::filesystem::path input;
    std::filesystem::path output;
    auto* apply_cmd = app.add_subcommand("apply", "Segment an image with a learned model");
    apply_cmd->add_option("--model", model, "Model file")->required();
    apply_cmd->add_option("--in", input, "Input image")->required();
    apply_cmd->add_option("--out", output, "Output binary image")->required();

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen-dataset", "Write a synthetic shapes dataset");
    gen_cmd->add_option("--out", gen.out, "Output directory")->required();
    gen_cmd->add_option("--count", gen.count, "Number of images")->check(CLI::NonNegativeNumber);
    gen_cmd->add_option("--seed", gen.seed, "RNG seed");
    gen_cmd->add_option("--noise", gen.noise, "Noise std-dev as a fraction of 255")->check(CLI::NonNegativeNumber);
    gen_cmd->add_option("--size", gen.size, "Image width and height")->check(CLI::Range(16, 4096));
    gen_cmd->add_option("--suffix", gen.suffix, "Ground-truth filename suffix");

    auto* inspect_cmd = app.add_subcommand("inspect", "Print a model summary");
    inspect_cmd->add_option("--model", model, "Model file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error[E_USAGE]: " << e.what() << '\n';
        return kExitUsage;
    }

    log::set_level(quiet ? log::Level::Error : verbose ? log::Level::Debug : log::Level::Info);
    if (learn_cmd->parsed()) {
        learn.combinations = split_list(combos);
        return cmd_learn(learn, out, err);
    }
    if (apply_cmd->parsed()) return cmd_apply(model, input, output, out, err);
    if (gen_cmd->parsed()) return cmd_gen_dataset(gen, out, err);
    if (inspect_cmd->parsed()) return cmd_inspect(model, out, err);
    return kExitUsage;
}

}  // namespace opsel::cli
