// qlocker: experiment runner for the verification box and the quantum locker.
//
// Exit codes: 0 success, 2 usage, 3 invalid protocol input, 4 a statistical
// check in the report failed.

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "qlocker/errors.hpp"
#include "qlocker/experiments.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitProtocol = 3;
constexpr int kExitCheckFailed = 4;

struct CommonFlags {
    std::string format = "json";
    std::string out;
    std::string policy = "paper";
};

void add_common(CLI::App* cmd, qlocker::ExperimentConfig& cfg, CommonFlags& flags) {
    cmd->add_option("--shots", cfg.shots, "Number of shots / trajectories")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", cfg.seed, "Random seed");
    cmd->add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", flags.out, "Write output to PATH instead of stdout");
    cmd->add_option("--workers", cfg.workers, "Worker threads for shot sampling (0 = all cores)");
}

int emit(const qlocker::ExperimentReport& report, const CommonFlags& flags) {
    const std::string text = flags.format == "csv" ? report.csv : report.json.dump(2) + "\n";
    if (flags.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(flags.out, std::ios::binary);
        if (!f) {
            std::cerr << "cannot open " << flags.out << '\n';
            return kExitUsage;
        }
        f << text;
    }
    return report.all_checks_passed() ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weak-measurement verification and quantum locker simulator"};
    app.require_subcommand(1);

    qlocker::ExperimentConfig cfg;
    CommonFlags flags;

    double theta = 0.0;
    std::size_t iterations = 0;
    double overlap = 0.0;

    auto* verify = app.add_subcommand("verify-demo", "Single iteration with x/y/z ancilla tomography");
    add_common(verify, cfg, flags);
    auto* verify_theta = verify->add_option("--theta", theta, "Coupling angle");
    verify->add_option("--alpha-angle", cfg.alpha_angle, "System prepared as cos(a)|0> + sin(a)|1>");

    auto* converge = app.add_subcommand("converge", "N-iteration run on |+>");
    add_common(converge, cfg, flags);
    auto* converge_theta = converge->add_option("--theta", theta, "Coupling angle");
    auto* converge_iter = converge->add_option("--iterations", iterations, "Iterations N");

    auto* locker = app.add_subcommand("locker-demo", "Full locker protocol run");
    add_common(locker, cfg, flags);
    auto* locker_theta = locker->add_option("--theta", theta, "Coupling angle");
    auto* locker_iter = locker->add_option("--iterations", iterations, "Iterations N");
    locker->add_option("--message", cfg.message, "Message bits, e.g. 1011");
    locker->add_option("--otp-qubits", cfg.otp_qubits, "OTP width n")->check(CLI::PositiveNumber);
    locker->add_option("--policy", flags.policy, "Click policy")->check(CLI::IsMember({"paper", "strict"}));
    auto* locker_overlap =
        locker->add_option("--overlap", overlap, "Per-qubit overlap of the wrong password")->check(CLI::Range(0.0, 1.0));
    locker->add_option("--repetitions", cfg.repetitions, "Wrong-password repetitions");

    auto* sweep = app.add_subcommand("sweep", "False-accept tables over (n, theta, N, overlap)");
    add_common(sweep, cfg, flags);
    sweep->add_option("--theta", cfg.theta_grid, "Coupling angles")->delimiter(',');
    sweep->add_option("--iterations", cfg.iteration_grid, "Iteration counts")->delimiter(',');
    sweep->add_option("--overlap", cfg.overlap_grid, "Per-qubit overlaps")->delimiter(',');
    sweep->add_option("--otp-qubits", cfg.otp_qubits, "Largest OTP width")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    cfg.policy = flags.policy == "strict" ? qlocker::ClickPolicy::StrictAbort : qlocker::ClickPolicy::Default;
    for (auto* opt : {verify_theta, converge_theta, locker_theta}) {
        if (opt->count() > 0) cfg.theta = theta;
    }
    for (auto* opt : {converge_iter, locker_iter}) {
        if (opt->count() > 0) cfg.iterations = iterations;
    }
    if (locker_overlap->count() > 0) cfg.overlap = overlap;

    try {
        if (verify->parsed()) return emit(qlocker::run_verify_demo(cfg), flags);
        if (converge->parsed()) return emit(qlocker::run_converge(cfg), flags);
        if (locker->parsed()) return emit(qlocker::run_locker_demo(cfg), flags);
        if (sweep->parsed()) return emit(qlocker::run_sweep(cfg), flags);
    } catch (const qlocker::InvalidMessageError& e) {
        std::cerr << "invalid message: " << e.what() << '\n';
        return kExitProtocol;
    } catch (const qlocker::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitProtocol;
    }
    return kExitUsage;
}
