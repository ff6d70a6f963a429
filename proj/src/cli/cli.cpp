#include "sumrange/cli/cli.hpp"

#include "sumrange/core/error.hpp"
#include "sumrange/core/riemann.hpp"
#include "sumrange/core/series_spec.hpp"
#include "sumrange/statconv/construct.hpp"
#include "sumrange/statconv/density.hpp"
#include "sumrange/statconv/reduction.hpp"
#include "sumrange/statconv/witness.hpp"
#include "sumrange/twon/classify.hpp"
#include "sumrange/twon/construct.hpp"
#include "sumrange/twon/lattice.hpp"
#include "sumrange/verify/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <sstream>

namespace sumrange::cli {

namespace {

constexpr std::uint64_t kDumpDepth = 20;
constexpr std::uint64_t kVerifyDepth = 100'000;

std::string verb_name(Verb v) {
    switch (v) {
    case Verb::Analyze: return "analyze";
    case Verb::Construct: return "construct";
    case Verb::Verify: return "verify";
    case Verb::Enumerate: return "enumerate";
    }
    return "?";
}

} // namespace

CommandRequest parse_command_line(const std::vector<std::string>& args) {
    CLI::App app{"sum ranges of real series"};
    std::string verb, mode = "2n", window;
    CommandRequest r;
    std::string target, eps, out;
    std::uint64_t depth = 0;
    int bound = 0;
    app.add_option("verb", verb, "analyze | construct | verify | enumerate")
        ->required()
        ->check(CLI::IsMember({"analyze", "construct", "verify", "enumerate"}));
    app.add_option("spec", r.spec_path, "series spec file")->required();
    auto* o_mode = app.add_option("--mode", mode, "ordinary | stat | 2n")->check(CLI::IsMember({"ordinary", "stat", "2n"}));
    auto* o_target = app.add_option("--target", target, "target value, e.g. 1+1*sqrt2");
    auto* o_eps = app.add_option("--eps", eps, "tolerance as an exact rational");
    auto* o_depth = app.add_option("--depth", depth, "number of terms")->check(CLI::PositiveNumber);
    auto* o_window = app.add_option("--window", window, "lo,hi");
    auto* o_bound = app.add_option("--coeff-bound", bound, "coefficient bound")->check(CLI::NonNegativeNumber);
    auto* o_out = app.add_option("--out", out, "output file");
    (void)o_mode;

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    if (verb == "analyze") r.verb = Verb::Analyze;
    if (verb == "construct") r.verb = Verb::Construct;
    if (verb == "verify") r.verb = Verb::Verify;
    if (verb == "enumerate") r.verb = Verb::Enumerate;
    r.mode = mode == "ordinary" ? ClassMode::Ordinary : mode == "stat" ? ClassMode::Statistical : ClassMode::TwoN;
    if (*o_target) r.target = target;
    if (*o_eps) r.eps = eps;
    if (*o_depth) r.depth = depth;
    if (*o_bound) r.coeff_bound = bound;
    if (*o_out) r.out = out;
    if (*o_window) {
        auto comma = window.find(',');
        if (comma == std::string::npos || window.find(',', comma + 1) != std::string::npos) {
            throw UsageError("--window expects lo,hi");
        }
        r.window = std::make_pair(window.substr(0, comma), window.substr(comma + 1));
    }
    check_compatibility(r);
    return r;
}

void check_compatibility(const CommandRequest& r) {
    auto reject = [&](bool present, const char* flag) {
        if (present) {
            throw UsageError(std::string(flag) + " is not accepted by " + verb_name(r.verb));
        }
    };
    switch (r.verb) {
    case Verb::Analyze:
        reject(r.target.has_value(), "--target");
        reject(r.eps.has_value(), "--eps");
        reject(r.depth.has_value(), "--depth");
        reject(r.window.has_value(), "--window");
        reject(r.coeff_bound.has_value(), "--coeff-bound");
        break;
    case Verb::Construct:
        if (!r.target) {
            throw UsageError("construct needs --target");
        }
        reject(r.window.has_value(), "--window");
        reject(r.coeff_bound.has_value(), "--coeff-bound");
        break;
    case Verb::Verify:
        reject(r.window.has_value(), "--window");
        reject(r.coeff_bound.has_value(), "--coeff-bound");
        break;
    case Verb::Enumerate:
        if (!r.window) {
            throw UsageError("enumerate needs --window lo,hi");
        }
        if (r.mode == ClassMode::Ordinary) {
            throw UsageError("enumerate lists lattice ranges; use --mode 2n or --mode stat");
        }
        reject(r.target.has_value(), "--target");
        reject(r.eps.has_value(), "--eps");
        reject(r.depth.has_value(), "--depth");
        break;
    }
}

namespace {

struct Context {
    const CommandRequest& req;
    SeriesSpec spec;
    std::vector<std::string> lines;
    bool failed = false;

    const Basis& basis() const { return *spec.basis(); }
    void emit(const std::vector<std::string>& ls) { lines.insert(lines.end(), ls.begin(), ls.end()); }
};

BasisValue parse_flag_value(const Basis& basis, const std::string& text, const char* flag) {
    try {
        return parse_value(basis, text);
    } catch (const Error& e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    }
}

Rational parse_eps(const CommandRequest& req, const Basis& basis, const Rational& fallback) {
    if (!req.eps) {
        return fallback;
    }
    BasisValue v = parse_flag_value(basis, *req.eps, "--eps");
    if (!v.is_rational() || v.rational_part() < 0) {
        throw UsageError("--eps must be a non-negative rational");
    }
    return v.rational_part();
}

SumRangeClassification classify(const SeriesSpec& spec, ClassMode mode) {
    switch (mode) {
    case ClassMode::Ordinary: return classify_ordinary(spec);
    case ClassMode::Statistical: return classify_sr_st(spec);
    case ClassMode::TwoN: return classify_sr2(spec);
    }
    throw Error(ErrorCode::Unsupported, "mode");
}

using Factory = std::function<PermutationSchedule()>;

/// The series a construction acts on, with the schedule factory.
struct Plan {
    SeriesSpec spec;
    Factory schedule;
    std::vector<std::string> notes;
};

Plan plan_for(const SeriesSpec& spec, ClassMode mode, const std::optional<BasisValue>& target) {
    if (!target) {
        return {spec, [] { return identity_schedule(); }, {"schedule=identity"}};
    }
    const Basis& basis = *spec.basis();
    switch (mode) {
    case ClassMode::TwoN: {
        auto cls = classify_sr2(spec);
        construct_target_2n(spec, *target, cls);  // surfaces range errors before any output
        return {spec, [spec, t = *target, cls] { return construct_target_2n(spec, t, cls); }, {}};
    }
    case ClassMode::Ordinary: {
        auto cls = classify_ordinary(spec);
        if (cls.kind == SumRangeKind::Singleton) {
            if (!(cls.offset == *target)) {
                throw Error(ErrorCode::TargetNotInRange, "target not in the sum range {" + cls.offset.to_string(basis) + "}");
            }
            return {spec, [] { return identity_schedule(); }, {}};
        }
        return {spec, [spec, t = *target] { return riemann_greedy(spec, t); }, {}};
    }
    case ClassMode::Statistical: {
        ZeroSubstitution red = zero_substitution_reduction(spec);
        std::vector<std::string> notes;
        if (red.changed) {
            notes.push_back("reduced=zero_substitution");
            notes.push_back("correction=" + red.correction.to_string(basis) + " (first " + std::to_string(red.summed) +
                            " removed terms)");
            notes.push_back("correction_remainder_bound=" + format_rational(red.remainder_bound));
        }
        LprWitness w = build_lpr_witness(red.spec, *target);
        notes.push_back("witness=" + w.family());
        SeriesSpec s = red.spec;
        return {s, [s, w] { return construct_stat_rearrangement(s, w); }, notes};
    }
    }
    throw Error(ErrorCode::Unsupported, "mode");
}

std::optional<BasisValue> default_target(const SeriesSpec& spec, ClassMode mode) {
    const auto& md = spec.metadata();
    switch (mode) {
    case ClassMode::Ordinary: return md.ordinary_sum;
    case ClassMode::Statistical: return md.stat_limit;
    case ClassMode::TwoN: return md.two_n_limit;
    }
    return std::nullopt;
}

VerificationReport density_as_report(const DensityReport& d, const Rational& eps, std::uint64_t depth,
                                     const std::string& subject, double ms) {
    VerificationReport r;
    r.subject = subject;
    r.check = "stat_limit eps=" + format_rational(eps);
    r.depth = depth;
    std::string ratios;
    for (std::size_t i = 0; i < d.ratios.size(); ++i) {
        ratios += (i ? "," : "") + format_rational(d.ratios[i]);
    }
    r.measured = "density=[" + ratios + "]";
    r.tolerance = "threshold=" + format_rational(DensityOptions{}.threshold);
    r.verdict = d.verdict == DensityVerdict::NegligibleAtDepth     ? Verdict::Pass
                : d.verdict == DensityVerdict::NotNegligibleAtDepth ? Verdict::Fail
                                                                    : Verdict::Inconclusive;
    r.detail = d.verdict == DensityVerdict::Inconclusive ? "Inconclusive" : to_string(d.verdict);
    r.runtime_ms = ms;
    return r;
}

void limit_checks(Context& ctx, const Plan& plan, const BasisValue& target, std::uint64_t depth, bool lattice) {
    const Basis& basis = *plan.spec.basis();
    const bool exact = plan.spec.preferred_summation() == SumTrack::Exact;
    Rational fallback = (ctx.req.mode == ClassMode::TwoN && exact && lattice) ? Rational(0) : Rational(1, 100);
    Rational eps = parse_eps(ctx.req, basis, fallback);
    auto first = plan.schedule();
    VerificationReport b = check_bijection_prefix(first, depth, plan.spec.describe() + " / " + first.name());
    ctx.lines.push_back("");
    ctx.emit(b.lines());
    ctx.failed |= b.verdict == Verdict::Fail;
    VerificationReport v;
    switch (ctx.req.mode) {
    case ClassMode::TwoN: v = verify_2n_limit(plan.spec, plan.schedule(), target, eps, depth); break;
    case ClassMode::Ordinary: v = verify_limit(plan.spec, plan.schedule(), target, eps, depth); break;
    case ClassMode::Statistical: {
        if (eps == 0) {
            throw UsageError("--eps must be positive in stat mode");
        }
        auto t0 = std::chrono::steady_clock::now();
        auto s = plan.schedule();
        std::string subject = plan.spec.describe() + " / " + s.name();
        DensityReport d = verify_stat_limit(plan.spec, std::move(s), target, eps, depth);
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        v = density_as_report(d, eps, depth, subject, ms);
        break;
    }
    }
    ctx.lines.push_back("");
    ctx.emit(v.lines());
    ctx.failed |= v.verdict == Verdict::Fail;
}

void do_analyze(Context& ctx) {
    auto cls = classify(ctx.spec, ctx.req.mode);
    ctx.emit(cls.report_lines(ctx.basis()));
}

bool is_lattice(const SeriesSpec& spec, ClassMode mode) {
    try {
        return classify(spec, mode).kind != SumRangeKind::AllReals;
    } catch (const Error&) {
        return false;
    }
}

void do_construct(Context& ctx) {
    BasisValue target = parse_flag_value(ctx.basis(), *ctx.req.target, "--target");
    Plan plan = plan_for(ctx.spec, ctx.req.mode, target);
    std::uint64_t dump = ctx.req.depth.value_or(kDumpDepth);
    auto s = plan.schedule();
    ctx.lines.push_back("target=" + target.to_string(ctx.basis()));
    ctx.lines.push_back("schedule=" + s.name());
    ctx.emit(plan.notes);
    ctx.lines.push_back("prefix:");
    for (std::uint64_t n = 1; n <= dump; ++n) {
        Emission e = s.next();
        ctx.lines.push_back(std::to_string(n) + " " + std::to_string(e.index) + " " + e.block.kind + "#" +
                            std::to_string(e.block.number));
    }
    limit_checks(ctx, plan, target, std::max(dump, kVerifyDepth), is_lattice(ctx.spec, ctx.req.mode));
}

void do_verify(Context& ctx) {
    std::optional<BasisValue> target;
    if (ctx.req.target) {
        target = parse_flag_value(ctx.basis(), *ctx.req.target, "--target");
    }
    Plan plan = plan_for(ctx.spec, ctx.req.mode, target);
    if (!target) {
        target = default_target(ctx.spec, ctx.req.mode);
        if (!target) {
            throw Error(ErrorCode::MetadataMissing, "no target given and no declared limit for this mode");
        }
    }
    ctx.lines.push_back("target=" + target->to_string(ctx.basis()));
    ctx.emit(plan.notes);
    limit_checks(ctx, plan, *target, ctx.req.depth.value_or(kVerifyDepth), is_lattice(ctx.spec, ctx.req.mode));
}

void do_enumerate(Context& ctx) {
    const Basis& basis = ctx.basis();
    BasisValue lo = parse_flag_value(basis, ctx.req.window->first, "--window");
    BasisValue hi = parse_flag_value(basis, ctx.req.window->second, "--window");
    if (less(basis, hi, lo)) {
        throw UsageError("--window lo exceeds hi");
    }
    auto cls = classify(ctx.spec, ctx.req.mode);
    std::vector<BasisValue> points;
    switch (cls.kind) {
    case SumRangeKind::AllReals:
        throw Error(ErrorCode::Unsupported, "the range is all of R; nothing to enumerate");
    case SumRangeKind::Singleton:
        if (!less(basis, cls.offset, lo) && !less(basis, hi, cls.offset)) {
            points.push_back(cls.offset);
        }
        break;
    case SumRangeKind::ShiftedLattice: {
        Integer bound(ctx.req.coeff_bound.value_or(5));
        for (BasisValue p : lattice_enumerate(basis, cls.generators, lo - cls.offset, hi - cls.offset, bound,
                                              cls.parity_even)) {
            points.push_back(p + cls.offset);
        }
        break;
    }
    }
    std::string line;
    for (std::size_t i = 0; i < points.size(); ++i) {
        line += (i ? ", " : "") + points[i].to_string(basis);
    }
    ctx.lines.push_back(line);
}

int code_for(ErrorCode c) {
    switch (c) {
    case ErrorCode::SpecParse: return exit_code::spec_parse;
    case ErrorCode::TargetNotInRange:
    case ErrorCode::TargetNotInLPR: return exit_code::not_attainable;
    case ErrorCode::InvalidArgument: return exit_code::usage;
    case ErrorCode::Unsupported:
    case ErrorCode::MetadataMissing:
    case ErrorCode::FamilyNotSupported:
    case ErrorCode::NoLimitPoint:
    case ErrorCode::DeltaInfinite:
    case ErrorCode::TailDeviationDiverges:
    case ErrorCode::NotEnoughZeros:
    case ErrorCode::NoNullSubsequence: return exit_code::unsupported;
    default: return exit_code::internal;
    }
}

} // namespace

int run(const CommandRequest& req, std::ostream& out, std::ostream& err) {
    try {
        check_compatibility(req);
        Context ctx{req, SeriesSpec::from_file(req.spec_path), {}};
        ctx.lines.push_back("verb=" + verb_name(req.verb));
        if (req.verb != Verb::Analyze) {
            ctx.lines.push_back("mode=" + to_string(req.mode));
        }
        ctx.lines.push_back("spec=" + ctx.spec.describe());
        switch (req.verb) {
        case Verb::Analyze: do_analyze(ctx); break;
        case Verb::Construct: do_construct(ctx); break;
        case Verb::Verify: do_verify(ctx); break;
        case Verb::Enumerate: do_enumerate(ctx); break;
        }
        std::ostringstream text;
        for (const auto& l : ctx.lines) {
            text << l << '\n';
        }
        if (req.out) {
            std::ofstream f(*req.out);
            if (!f) {
                err << "error: cannot write " << *req.out << '\n';
                return exit_code::internal;
            }
            f << text.str();
        } else {
            out << text.str();
        }
        return ctx.failed ? exit_code::verify_failed : exit_code::ok;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return code_for(e.code());
    }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CommandRequest req;
    try {
        req = parse_command_line(args);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_code::usage;
    }
    return run(req, out, err);
}

std::string canonicalize(const std::string& report) {
    std::istringstream in(report);
    std::string line, out;
    while (std::getline(in, line)) {
        if (line.rfind("runtime_ms=", 0) == 0) {
            continue;
        }
        out += line + '\n';
    }
    return out;
}

} // namespace sumrange::cli
