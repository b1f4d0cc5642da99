#include "qlocker/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qlocker/errors.hpp"
#include "qlocker/locker.hpp"
#include "qlocker/teleport.hpp"
#include "qlocker/tomography.hpp"

namespace qlocker {

using nlohmann::json;

namespace {

// Hardware values from the ibmqx4 runs, carried as annotated references.
constexpr double kDefaultVerifyTheta = 0.2;
constexpr double kDefaultConvergeTheta = 0.1;
constexpr std::size_t kDefaultConvergeIterations = 38;
constexpr std::uint64_t kHardwareShots = 8192;
constexpr std::uint64_t kHardwareAllZero = 6836;
constexpr std::uint64_t kHardwareAllZeroSystemOne = 4116;
constexpr std::uint64_t kHardwareAllZeroSystemZero = 2720;

const std::map<Basis, OutcomeProbabilities>& hardware_table() {
    static const std::map<Basis, OutcomeProbabilities> table{
        {Basis::X, {0.498, 0.502}},
        {Basis::Y, {0.710, 0.290}},
        {Basis::Z, {0.938, 0.063}},
    };
    return table;
}

json stokes_json(const StokesVector& s) { return {{"x", s.x}, {"y", s.y}, {"z", s.z}}; }

json binomial_check(const std::string& name, std::uint64_t hits, std::uint64_t trials, double expected, double k) {
    const double observed = trials == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(trials);
    const double sigma = trials == 0 ? 0.0 : std::sqrt(expected * (1 - expected) / static_cast<double>(trials));
    return band_check(name, observed, expected, sigma, k);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) { return splitmix64(seed ^ splitmix64(salt)); }

json finish(json report, json checks) {
    bool all = true;
    for (const auto& c : checks) all &= c.at("passed").get<bool>();
    report["checks"] = std::move(checks);
    report["all_checks_passed"] = all;
    report["schema_version"] = kSchemaVersion;
    return report;
}

}  // namespace

bool ExperimentReport::all_checks_passed() const { return json.value("all_checks_passed", false); }

json band_check(const std::string& name, double observed, double expected, double sigma, double k) {
    const double tolerance = k * sigma;
    const bool passed = sigma > 0 ? std::abs(observed - expected) <= tolerance : std::abs(observed - expected) <= 1e-12;
    return {{"name", name},       {"observed", observed}, {"expected", expected},
            {"sigma", sigma},     {"k_sigma", k},         {"tolerance", tolerance},
            {"passed", passed}};
}

Circuit single_iteration_circuit(double alpha_angle, double theta, Basis basis) {
    Circuit c(2);
    c.add(GateOp::ry(0, 2 * alpha_angle));
    c.add(decompose_controlled0_rx(theta, 0, 1));
    c.measure(1, basis);
    return c;
}

Circuit convergence_circuit(double theta, std::size_t iterations) {
    Circuit c(2);
    c.add(GateOp::h(0));
    const auto coupling = decompose_controlled0_rx(theta, 0, 1);
    for (std::size_t k = 0; k < iterations; ++k) {
        c.add(coupling);
        c.measure(1);
        c.reset(1);
    }
    c.measure(0);
    return c;
}

ExperimentReport run_verify_demo(const ExperimentConfig& config) {
    const double theta = config.theta.value_or(kDefaultVerifyTheta);
    const double a = config.alpha_angle;
    const Complex alpha = std::cos(a);
    const bool reference_setup = std::abs(theta - kDefaultVerifyTheta) < 1e-12 && std::abs(a - std::numbers::pi / 8) < 1e-12;

    const DensityMatrix rho_diag = theoretical_ancilla_density(alpha, theta, AncillaModel::Diagonal);
    const DensityMatrix rho_full = theoretical_ancilla_density(alpha, theta, AncillaModel::FullReduced);
    const StokesVector analytic = stokes_of(rho_full);

    std::map<Basis, CountsHistogram> histograms;
    json probabilities = json::object();
    json checks = json::array();
    std::string csv;
    std::uint64_t salt = 0;
    for (Basis b : {Basis::X, Basis::Y, Basis::Z}) {
        const auto h = sample_shots(single_iteration_circuit(a, theta, b), config.shots,
                                    derive_seed(config.seed, salt++), config.workers);
        histograms[b] = h;
        const double component = b == Basis::X ? analytic.x : b == Basis::Y ? analytic.y : analytic.z;
        const double expected_p0 = (1 + component) / 2;
        json row = {{"p0", h.frequency("0")}, {"p1", h.frequency("1")}, {"analytic_p0", expected_p0}};
        if (reference_setup) {
            const auto& ref = hardware_table().at(b);
            row["hardware_reference"] = {{"p0", ref.p0}, {"p1", ref.p1}};
        }
        probabilities[basis_name(b)] = row;
        checks.push_back(binomial_check(std::string(basis_name(b)) + "_basis_p0_within_3sigma", h.count("0"),
                                        h.shots, expected_p0, 3.0));
        csv += std::string("# basis=") + basis_name(b) + '\n' + histogram_csv(h);
    }

    const StokesVector simulated = stokes_from_counts(histograms);
    const Reconstruction rec = reconstruct_density(simulated);

    json report = {
        {"command", "verify-demo"},
        {"seed", config.seed},
        {"parameters", {{"theta", theta}, {"alpha_angle", a}, {"shots", config.shots}}},
        {"probabilities", probabilities},
        {"stokes", {{"simulated", stokes_json(simulated)}, {"analytic_full_reduced", stokes_json(analytic)}}},
        {"rho_experimental", {{"matrix", rec.rho.to_json()}, {"physical", rec.physical}}},
        {"rho_theory",
         {{"diagonal", rho_diag.to_json()}, {"full_reduced", rho_full.to_json()}}},
    };

    json fid = json::object();
    if (rec.physical && rec.rho.is_physical()) {
        fid["simulated_vs_diagonal"] = fidelity(rec.rho, rho_diag);
        fid["simulated_vs_full_reduced"] = fidelity(rec.rho, rho_full);
    } else {
        fid["simulated_vs_diagonal"] = nullptr;
        fid["simulated_vs_full_reduced"] = nullptr;
    }

    if (reference_setup) {
        const StokesVector hardware_stokes = stokes_from_probabilities(hardware_table());
        const Reconstruction hardware_rec = reconstruct_density(hardware_stokes);
        report["stokes"]["hardware_reference"] = stokes_json(hardware_stokes);
        report["rho_hardware_reference"] = hardware_rec.rho.to_json();
        fid["hardware_reference_vs_diagonal"] = fidelity(hardware_rec.rho, rho_diag);
        fid["hardware_reference_vs_full_reduced"] = fidelity(hardware_rec.rho, rho_full);
        report["notes"] = {
            {"y_stokes_sign",
             "hardware y-Stokes is positive while the exact reduced state predicts a negative value under "
             "Rx/S-dagger conventions used here; magnitudes are compared, sign is flagged"},
            {"y_stokes_sign_agrees", std::signbit(hardware_stokes.y) == std::signbit(analytic.y)},
        };
    }
    report["fidelity"] = fid;

    return {finish(std::move(report), std::move(checks)), std::move(csv)};
}

ExperimentReport run_converge(const ExperimentConfig& config) {
    const double theta = config.theta.value_or(kDefaultConvergeTheta);
    const std::size_t n_iter = config.iterations.value_or(kDefaultConvergeIterations);
    if (!(theta >= 0.0 && theta < std::numbers::pi / 2)) throw DomainError("theta must lie in [0, pi/2)");

    const auto hist = sample_shots(convergence_circuit(theta, n_iter), config.shots, config.seed, config.workers);

    const std::string zeros(n_iter, '0');
    const std::uint64_t all_zero_one = hist.count(zeros + "1");
    const std::uint64_t all_zero_zero = hist.count(zeros + "0");
    const std::uint64_t all_zero = all_zero_one + all_zero_zero;

    const double expected_all_zero = all_zero_probability(0.5, theta, n_iter);
    const double expected_one = survival_one_probability(0.5, theta, n_iter);

    std::vector<std::pair<std::string, std::uint64_t>> top(hist.counts.begin(), hist.counts.end());
    std::sort(top.begin(), top.end(), [](const auto& l, const auto& r) {
        return l.second != r.second ? l.second > r.second : l.first < r.first;
    });
    json top_json = json::array();
    for (std::size_t k = 0; k < std::min<std::size_t>(5, top.size()); ++k) {
        top_json.push_back({{"outcome", top[k].first}, {"count", top[k].second}});
    }

    json results = {
        {"all_zero_count", all_zero},
        {"all_zero_fraction", static_cast<double>(all_zero) / static_cast<double>(hist.shots)},
        {"all_zero_system_one", all_zero_one},
        {"all_zero_system_zero", all_zero_zero},
        {"p_system_one_given_all_zero",
         all_zero == 0 ? 0.0 : static_cast<double>(all_zero_one) / static_cast<double>(all_zero)},
        {"distinct_outcomes", hist.counts.size()},
        {"top_outcomes", top_json},
    };
    json analytic = {{"all_zero_fraction", expected_all_zero}, {"p_system_one_given_all_zero", expected_one}};

    json report = {
        {"command", "converge"},
        {"seed", config.seed},
        {"parameters", {{"theta", theta}, {"iterations", n_iter}, {"shots", config.shots}, {"initial_state", "+"}}},
        {"simulated", results},
        {"analytic", analytic},
    };
    if (std::abs(theta - kDefaultConvergeTheta) < 1e-12 && n_iter == kDefaultConvergeIterations) {
        report["hardware_reference"] = {
            {"shots", kHardwareShots},
            {"all_zero_count", kHardwareAllZero},
            {"all_zero_system_one", kHardwareAllZeroSystemOne},
            {"all_zero_system_zero", kHardwareAllZeroSystemZero},
            {"all_zero_fraction", static_cast<double>(kHardwareAllZero) / kHardwareShots},
            {"p_system_one_given_all_zero", static_cast<double>(kHardwareAllZeroSystemOne) / kHardwareAllZero},
            {"distinct_outcomes", 248},
        };
    }

    json checks = json::array();
    checks.push_back(binomial_check("all_zero_fraction_within_3sigma", all_zero, hist.shots, expected_all_zero, 3.0));
    checks.push_back(
        binomial_check("p_system_one_given_all_zero_within_3sigma", all_zero_one, all_zero, expected_one, 3.0));

    return {finish(std::move(report), std::move(checks)), histogram_csv(hist)};
}

ExperimentReport run_locker_demo(const ExperimentConfig& config) {
    VerificationParams verification;
    verification.theta = config.theta.value_or(kDefaultConvergeTheta);
    verification.iterations = config.iterations.value_or(kDefaultConvergeIterations);
    verification.policy = config.policy;
    verification.validate();
    if (config.otp_qubits == 0) throw DomainError("otp width must be >= 1");

    const RandomStream root(config.seed);
    RandomStream secret_rng = root.split(0);
    const OtpParams params = OtpParams::random(config.otp_qubits, secret_rng);
    const LockerState locker = store_message(config.message, params, verification);
    const std::size_t n = params.width();

    json checks = json::array();
    json log = json::array();

    // Alice prepares the OTP qubit by qubit and teleports each one to Bob.
    ChannelRegistry registry;
    RandomStream channel_rng = root.split(1);
    std::vector<StateVector> received;
    json teleport_records = json::array();
    for (std::size_t k = 0; k < n; ++k) {
        StateVector qubit(1);
        qubit.apply(otp_rotation_gates(params.angles()[k], 0));
        const auto tr = registry.teleport(qubit, registry.open_channel(), channel_rng);
        teleport_records.push_back(tr.record.to_record());
        received.push_back(tr.received);
    }

    PasswordRegister correct(tensor(received));
    RandomStream unlock_rng = root.split(2);
    const UnlockResult good = attempt_unlock(locker, correct, unlock_rng);
    log.push_back(session_log(locker, good));
    checks.push_back({{"name", "correct_password_retrieves_message"},
                      {"observed", good.retrieved_string()},
                      {"expected", locker.message_string()},
                      {"passed", good.accepted && good.retrieved_string() == locker.message_string()}});
    checks.push_back({{"name", "correct_password_consumed"}, {"passed", otp_consumed_check(good, correct)}});

    // Fresh locker with the same secret; orthogonal password.
    const LockerState fresh = store_message(config.message, params, verification);
    const std::vector<double> zero_overlap(n, 0.0);
    PasswordRegister orthogonal(password_with_overlap(params, zero_overlap));
    RandomStream orth_rng = root.split(3);
    const UnlockResult bad = attempt_unlock(fresh, orthogonal, orth_rng);
    log.push_back(session_log(fresh, bad));
    const std::string blank(locker.message_length(), '0');
    checks.push_back({{"name", "orthogonal_password_retrieves_nothing"},
                      {"observed", bad.retrieved_string()},
                      {"expected", blank},
                      {"passed", !bad.accepted && bad.retrieved_string() == blank}});

    // Wrong password: fixed overlap per qubit, or an independent random OTP.
    StateVector wrong(1);
    if (config.overlap) {
        const std::vector<double> overlaps(n, *config.overlap);
        wrong = password_with_overlap(params, overlaps);
    } else {
        RandomStream guess_rng = root.split(4);
        wrong = generate_otp(OtpParams::random(n, guess_rng));
    }
    const double analytic = unlock_acceptance_probability(fresh, wrong);
    std::vector<double> per_qubit;
    {
        const StateVector phi = apply_inverse_rotation(wrong, params);
        for (std::size_t k = 0; k < n; ++k) {
            per_qubit.push_back(phi.probability(k, 0));
        }
    }

    CountsHistogram retrieved;
    std::uint64_t accepted = 0;
    const RandomStream rep_root = root.split(5);
    for (std::uint64_t r = 0; r < config.repetitions; ++r) {
        PasswordRegister attempt(wrong);
        RandomStream rng = rep_root.split(r);
        const UnlockResult res = attempt_unlock(fresh, attempt, rng);
        accepted += res.accepted;
        ++retrieved.counts[res.retrieved_string()];
        ++retrieved.shots;
        if (r == 0) log.push_back(session_log(fresh, res));
    }
    if (config.repetitions > 0) {
        checks.push_back(binomial_check("wrong_password_acceptance_within_4sigma", accepted, config.repetitions,
                                        analytic, 4.0));
        bool no_partial = true;
        for (const auto& [bits, count] : retrieved.counts) {
            no_partial &= bits == blank || bits == locker.message_string();
        }
        checks.push_back({{"name", "no_partial_transfer"}, {"passed", no_partial}});
    }

    json report = {
        {"command", "locker-demo"},
        {"seed", config.seed},
        {"parameters",
         {{"message_length", locker.message_length()},
          {"otp_qubits", n},
          {"theta", verification.theta},
          {"iterations", verification.iterations},
          {"policy", policy_name(verification.policy)},
          {"repetitions", config.repetitions},
          {"params_fnv1a", params.fingerprint()}}},
        {"teleport_records", teleport_records},
        {"correct_password",
         {{"accepted", good.accepted}, {"retrieved", good.retrieved_string()}, {"expected", locker.message_string()}}},
        {"orthogonal_password", {{"accepted", bad.accepted}, {"retrieved", bad.retrieved_string()}}},
        {"wrong_password",
         {{"overlap_per_qubit", per_qubit},
          {"analytic_acceptance", analytic},
          {"simulated_acceptance",
           config.repetitions == 0 ? 0.0
                                   : static_cast<double>(accepted) / static_cast<double>(config.repetitions)},
          {"accepted", accepted},
          {"retrieved_histogram", retrieved.counts}}},
        {"session_log", log},
    };
    return {finish(std::move(report), std::move(checks)), histogram_csv(retrieved)};
}

ExperimentReport run_sweep(const ExperimentConfig& config) {
    if (config.otp_qubits == 0) throw DomainError("otp width must be >= 1");
    json rows = json::array();
    json checks = json::array();
    std::ostringstream csv;
    csv << "n,theta,iterations,overlap,policy,analytic,monte_carlo,degenerate\n";
    csv.precision(17);

    std::uint64_t row_index = 0;
    for (std::size_t n = 1; n <= config.otp_qubits; ++n) {
        for (double theta : config.theta_grid) {
            for (std::size_t iters : config.iteration_grid) {
                for (double overlap : config.overlap_grid) {
                    if (!(overlap >= 0.0 && overlap <= 1.0)) throw DomainError("overlap must lie in [0, 1]");
                    const bool degenerate = theta == 0.0;
                    for (ClickPolicy policy : {ClickPolicy::Default, ClickPolicy::StrictAbort}) {
                        const double survive =
                            policy == ClickPolicy::StrictAbort
                                ? std::pow(std::cos(theta), 2.0 * static_cast<double>(iters))
                                : 1.0;
                        const double analytic = std::pow(overlap * survive, static_cast<double>(n));

                        json row = {{"n", n},
                                    {"theta", theta},
                                    {"iterations", iters},
                                    {"overlap", overlap},
                                    {"policy", policy_name(policy)},
                                    {"analytic", analytic},
                                    {"degenerate", degenerate}};
                        const std::uint64_t this_row = row_index++;
                        if (degenerate) {
                            row["monte_carlo"] = nullptr;
                            row["note"] = "theta = 0: no coupling, verification inert";
                        } else {
                            VerificationParams vp{theta, iters, policy};
                            vp.validate();
                            const StateVector system =
                                StateVector::qubit(std::sqrt(overlap), std::sqrt(1.0 - overlap));
                            const RandomStream row_root = RandomStream(config.seed).split(this_row);
                            std::uint64_t accepted = 0;
                            for (std::uint64_t s = 0; s < config.shots; ++s) {
                                RandomStream rng = row_root.split(s);
                                bool ok = true;
                                for (std::size_t k = 0; k < n && ok; ++k) {
                                    ok = run_verification(system, vp, rng).accepted;
                                }
                                accepted += ok;
                            }
                            const double mc = static_cast<double>(accepted) / static_cast<double>(config.shots);
                            row["monte_carlo"] = mc;
                            std::ostringstream name;
                            name << "n=" << n << ",theta=" << theta << ",N=" << iters << ",overlap=" << overlap
                                 << ",policy=" << policy_name(policy) << "_within_4sigma";
                            checks.push_back(binomial_check(name.str(), accepted, config.shots, analytic, 4.0));
                        }
                        csv << n << ',' << theta << ',' << iters << ',' << overlap << ',' << policy_name(policy)
                            << ',' << analytic << ',';
                        if (!degenerate) csv << row["monte_carlo"].get<double>();
                        csv << ',' << (degenerate ? 1 : 0) << '\n';
                        rows.push_back(std::move(row));
                    }
                }
            }
        }
    }

    json report = {
        {"command", "sweep"},
        {"seed", config.seed},
        {"parameters",
         {{"max_otp_qubits", config.otp_qubits},
          {"theta_grid", config.theta_grid},
          {"iteration_grid", config.iteration_grid},
          {"overlap_grid", config.overlap_grid},
          {"shots", config.shots}}},
        {"rows", rows},
    };
    return {finish(std::move(report), std::move(checks)), csv.str()};
}

}  // namespace qlocker
