// parityseq: exact generation, parity classification, identity verification,
// and p-adic congruence scanning for sequences tied to the alternating
// binomial transform.  All values are exact rationals rendered as "num/den"
// (the "/den" is omitted for integers); output is deterministic.
//
// Exit codes: 0 every computed check passed; 1 at least one refutation;
// 2 usage or hypothesis error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "parityseq/parityseq.hpp"

namespace ps = parityseq;
using ordered_json = nlohmann::ordered_json;

namespace {

struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;

    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw CLI::ValidationError("--out", "cannot open output file " + path);
        os = &file;
    }
    std::ostream& stream() { return *os; }
};

std::pair<long long, long long> parse_range_bounds(const std::string& text, const std::string& flag) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const long long v = std::stoll(text);
            return {v, v};
        }
        return {std::stoll(text.substr(0, dots)), std::stoll(text.substr(dots + 2))};
    } catch (const std::exception&) {
        throw CLI::ValidationError(flag, "expected a..b, got '" + text + "'");
    }
}

// "n=a..b" for --range
ps::ParamRange parse_named_range(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos)
        throw CLI::ValidationError("--range", "expected name=a..b, got '" + text + "'");
    ps::ParamRange r;
    r.name = text.substr(0, eq);
    std::tie(r.lo, r.hi) = parse_range_bounds(text.substr(eq + 1), "--range");
    if (r.lo < 0) throw CLI::ValidationError("--range", "indices must be non-negative");
    return r;
}

// Sequential execution honors any positive cap; the variable is validated so
// misconfiguration is caught loudly.
void check_thread_env() {
    const char* env = std::getenv("PARITYSEQ_THREADS");
    if (!env) return;
    try {
        if (std::stoll(env) >= 1) return;
    } catch (const std::exception&) {
    }
    throw CLI::ValidationError("PARITYSEQ_THREADS", std::string("must be a positive integer, got '") +
                                                        env + "'");
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    return out + "\"";
}

struct GenOptions {
    std::string kind;
    std::vector<std::string> params;
    long long upto = 0;
    std::string format = "json";
    std::string out_path;
};

struct ClassifyOptions {
    std::string kind;
    std::vector<std::string> params;
    long long upto = 64;
    std::string out_path;
};

struct VerifyOptions {
    std::string id;
    std::string seq, seq2;
    std::vector<std::string> ranges;
    std::vector<std::string> params;
    std::string ftable;
    std::string sign;
    std::string format = "json";
    std::string out_path;
};

struct CongruenceOptions {
    std::string id;
    std::string primes;
    std::string seq;
    std::vector<std::string> params;
    std::string format = "json";
    std::string out_path;
};

ps::SequenceHandle make_seq_from_flags(const std::string& kind, const std::vector<std::string>& params,
                                       const char* flag) {
    std::string spec = kind;
    for (std::size_t i = 0; i < params.size(); ++i) spec += (i == 0 ? ":" : ",") + params[i];
    try {
        return ps::make_sequence(spec);
    } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError(flag, e.what());
    }
}

int run_gen(const GenOptions& opt) {
    Output out;
    out.open(opt.out_path);
    auto seq = make_seq_from_flags(opt.kind, opt.params, "--kind");
    for (long long n = 0; n <= opt.upto; ++n) {
        const ps::Rational v = seq.term(static_cast<std::size_t>(n));
        if (opt.format == "csv") {
            out.stream() << n << "," << v.str() << "\n";
        } else {
            ordered_json row;
            row["n"] = n;
            row["value"] = v.str();
            out.stream() << row.dump() << "\n";
        }
    }
    return 0;
}

int run_classify(const ClassifyOptions& opt) {
    Output out;
    out.open(opt.out_path);
    auto seq = make_seq_from_flags(opt.kind, opt.params, "--kind");
    const auto rep = ps::classify(seq, static_cast<std::size_t>(opt.upto));
    ordered_json doc;
    doc["kind"] = seq.name();
    doc["verdict"] = ps::to_string(rep.verdict);
    doc["checked_upto"] = rep.checked_upto;
    if (rep.both) doc["both"] = true;
    if (rep.first_violation) {
        doc["first_violation"] = {{"n", rep.first_violation->n},
                                  {"lhs", rep.first_violation->lhs.str()},
                                  {"rhs", rep.first_violation->rhs.str()}};
    }
    out.stream() << doc.dump() << "\n";
    return 0;
}

int exit_code_from(bool any_fail, bool any_error) {
    if (any_fail) return 1;
    if (any_error) return 2;
    return 0;
}

int run_verify(const VerifyOptions& opt) {
    Output out;
    out.open(opt.out_path);

    ps::IdentityArgs args;
    if (!opt.seq.empty()) {
        try {
            args.seq = ps::make_sequence(opt.seq);
        } catch (const std::invalid_argument& e) {
            throw CLI::ValidationError("--seq", e.what());
        }
    }
    if (!opt.seq2.empty()) {
        try {
            args.seq2 = ps::make_sequence(opt.seq2);
        } catch (const std::invalid_argument& e) {
            throw CLI::ValidationError("--seq2", e.what());
        }
    }
    std::optional<ps::Rational> lambda_given;
    for (const auto& pv : opt.params) {
        const auto eq = pv.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--param", "expected name=value, got '" + pv + "'");
        const std::string key = pv.substr(0, eq), val = pv.substr(eq + 1);
        try {
            if (key == "lambda")
                lambda_given = ps::Rational::from_string(val);
            else if (key == "b")
                args.b = ps::Rational::from_string(val);
            else if (key == "c")
                args.c = ps::Rational::from_string(val);
            else if (key == "shift")
                args.shift = ps::Rational::from_string(val);
            else if (key == "shift2")
                args.shift2 = ps::Rational::from_string(val);
            else if (key == "r")
                args.r = std::stoll(val);
            else if (key == "p")
                args.p = std::stoll(val);
            else if (key == "m")
                args.m = std::stoll(val);
            else if (key == "n")
                args.n = std::stoll(val);
            else
                throw CLI::ValidationError("--param", "unknown parameter '" + key + "'");
        } catch (const CLI::ValidationError&) {
            throw;
        } catch (const std::exception&) {
            throw CLI::ValidationError("--param", "bad value for '" + key + "': " + val);
        }
    }
    if (!opt.ftable.empty()) {
        std::size_t pos = 0;
        while (pos <= opt.ftable.size()) {
            auto comma = opt.ftable.find(',', pos);
            if (comma == std::string::npos) comma = opt.ftable.size();
            try {
                args.f_table.push_back(ps::Rational::from_string(opt.ftable.substr(pos, comma - pos)));
            } catch (const std::exception&) {
                throw CLI::ValidationError("--ftable", "bad rational near '" +
                                                           opt.ftable.substr(pos, comma - pos) + "'");
            }
            pos = comma + 1;
        }
    }

    std::vector<ps::ParamRange> ranges;
    for (const auto& r : opt.ranges) ranges.push_back(parse_named_range(r));
    if (ranges.empty())
        throw CLI::ValidationError("--range", "at least one range (e.g. n=0..10) is required");

    std::vector<std::string> ids;
    try {
        ids = ps::expand_identity_id(opt.id);
    } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError("--id", e.what());
    }

    // The lambda-weighted families run over the fixed sample set unless a
    // value was supplied.
    static const std::vector<ps::Rational> kLambdaSet = {
        ps::Rational(0),  ps::Rational(1, 2), ps::Rational(-1, 2), ps::Rational(1),
        ps::Rational(2),  ps::Rational(-3),   ps::Rational(7, 3)};

    // Optional parity assertion before scanning.
    if (!opt.sign.empty()) {
        if (opt.sign != "+" && opt.sign != "-")
            throw CLI::ValidationError("--sign", "expected + or -");
        if (!args.seq) throw CLI::ValidationError("--sign", "requires --seq");
        const auto rep = ps::classify(*args.seq, 16);
        const bool want_even = opt.sign == "+";
        if (rep.verdict == ps::ParityReport::Verdict::Neither ||
            (!rep.both && rep.is_even() != want_even)) {
            std::cerr << "parityseq: --sign " << opt.sign << " does not match sequence "
                      << args.seq->name() << " (classified " << ps::to_string(rep.verdict) << ")\n";
            return 2;
        }
    }

    bool any_fail = false, any_error = false;
    auto emit = [&](const std::string& id, const ps::IdentityOutcome& oc) {
        if (oc.status == ps::ScanStatus::fail) any_fail = true;
        if (oc.status == ps::ScanStatus::error) any_error = true;
        if (opt.format == "csv") {
            std::string lhs, rhs, residual;
            if (oc.report) {
                lhs = oc.report->lhs.str();
                rhs = oc.report->rhs.str();
                residual = oc.report->residual.str();
            }
            out.stream() << id << "," << csv_quote(oc.params) << "," << ps::to_string(oc.status)
                         << "," << lhs << "," << rhs << "," << residual << "\n";
            return;
        }
        ordered_json row;
        row["id"] = id;
        row["params"] = oc.params;
        row["status"] = ps::to_string(oc.status);
        if (oc.report) {
            row["lhs"] = oc.report->lhs.str();
            row["rhs"] = oc.report->rhs.str();
            row["residual"] = oc.report->residual.str();
            row["pass"] = oc.report->pass;
        } else {
            row["reason"] = oc.detail;
        }
        out.stream() << row.dump() << "\n";
    };

    for (const auto& id : ids) {
        const bool needs_lambda = id.rfind("T2.7", 0) == 0 || id.rfind("C2.6", 0) == 0 ||
                                  id.rfind("C2.7", 0) == 0;
        std::vector<std::optional<ps::Rational>> lambdas;
        if (lambda_given)
            lambdas.push_back(lambda_given);
        else if (needs_lambda)
            for (const auto& l : kLambdaSet) lambdas.push_back(l);
        else
            lambdas.push_back(std::nullopt);
        for (const auto& lam : lambdas) {
            args.lambda = lam;
            for (const auto& oc : ps::scan_identity(id, args, ranges)) emit(id, oc);
        }
    }
    return exit_code_from(any_fail, any_error);
}

int run_congruence(const CongruenceOptions& opt) {
    Output out;
    out.open(opt.out_path);

    ps::CongruenceArgs args;
    if (!opt.seq.empty()) {
        try {
            args.seq = ps::make_sequence(opt.seq);
        } catch (const std::invalid_argument& e) {
            throw CLI::ValidationError("--seq", e.what());
        }
    }
    for (const auto& pv : opt.params) {
        const auto eq = pv.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--param", "expected name=value, got '" + pv + "'");
        const std::string key = pv.substr(0, eq), val = pv.substr(eq + 1);
        try {
            if (key == "b")
                args.b = ps::Rational::from_string(val);
            else if (key == "c")
                args.c = ps::Rational::from_string(val);
            else
                throw CLI::ValidationError("--param", "unknown parameter '" + key + "'");
        } catch (const CLI::ValidationError&) {
            throw;
        } catch (const std::exception&) {
            throw CLI::ValidationError("--param", "bad value for '" + key + "': " + val);
        }
    }

    const auto [lo, hi] = parse_range_bounds(opt.primes, "--primes");
    std::vector<std::string> ids;
    try {
        ids = ps::expand_congruence_id(opt.id);
    } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError("--id", e.what());
    }

    bool any_fail = false, any_error = false;
    for (const auto& id : ids) {
        for (const auto& oc : ps::scan_primes(id, lo, hi, args)) {
            if (oc.status == ps::ScanStatus::fail) any_fail = true;
            if (oc.status == ps::ScanStatus::error) any_error = true;
            if (opt.format == "csv") {
                std::string modulus, lhs, rhs;
                if (oc.check) {
                    modulus = oc.check->modulus_str();
                    lhs = oc.check->lhs.value.str();
                    rhs = oc.check->rhs.value.str();
                }
                out.stream() << id << "," << oc.p << "," << modulus << "," << lhs << "," << rhs
                             << "," << ps::to_string(oc.status) << "\n";
                continue;
            }
            ordered_json row;
            row["id"] = id;
            row["p"] = oc.p;
            if (oc.check) {
                row["modulus"] = oc.check->modulus_str();
                if (oc.check->cleared > 0) row["cleared"] = oc.check->cleared;
                row["lhs"] = oc.check->lhs.value.str();
                row["rhs"] = oc.check->rhs.value.str();
                row["pass"] = oc.check->pass;
            } else {
                row["status"] = ps::to_string(oc.status);
                row["reason"] = oc.detail;
            }
            out.stream() << row.dump() << "\n";
        }
    }
    return exit_code_from(any_fail, any_error);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "parityseq: exact calculus of even/odd sequences under the alternating binomial "
        "transform"};
    app.require_subcommand(1);

    GenOptions gen_opt;
    auto* gen = app.add_subcommand("gen", "generate sequence terms");
    gen->add_option("--kind", gen_opt.kind, "sequence kind")->required();
    gen->add_option("--param", gen_opt.params, "sequence parameter name=value (b, c, m)");
    gen->add_option("--upto", gen_opt.upto, "last index to emit")->required()
        ->check(CLI::NonNegativeNumber);
    gen->add_option("--format", gen_opt.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    gen->add_option("--out", gen_opt.out_path, "output file (default: stdout)");

    ClassifyOptions cls_opt;
    auto* cls = app.add_subcommand("classify", "classify a sequence as even/odd up to N");
    cls->add_option("--kind", cls_opt.kind, "sequence kind")->required();
    cls->add_option("--param", cls_opt.params, "sequence parameter name=value (b, c, m)");
    cls->add_option("--upto", cls_opt.upto, "prefix length to check (default 64)")
        ->check(CLI::NonNegativeNumber);
    cls->add_option("--out", cls_opt.out_path, "output file (default: stdout)");

    VerifyOptions ver_opt;
    auto* ver = app.add_subcommand("verify", "verify an identity over parameter ranges");
    ver->add_option("--id", ver_opt.id, "identity id (e.g. T2.1, C2.2, C3.4)")->required();
    ver->add_option("--seq", ver_opt.seq, "sequence spec kind[:k=v,...]");
    ver->add_option("--seq2", ver_opt.seq2, "second sequence spec for pair identities");
    ver->add_option("--range", ver_opt.ranges, "parameter range name=a..b (n, m, p, r)");
    ver->add_option("--param", ver_opt.params, "fixed parameter name=value");
    ver->add_option("--ftable", ver_opt.ftable, "comma-separated rational table (T2.10)");
    ver->add_option("--sign", ver_opt.sign, "assert the sequence parity (+ even, - odd)");
    ver->add_option("--format", ver_opt.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    ver->add_option("--out", ver_opt.out_path, "output file (default: stdout)");

    CongruenceOptions con_opt;
    auto* con = app.add_subcommand("congruence", "verify a congruence over a prime range");
    con->add_option("--id", con_opt.id, "congruence id (e.g. T4.1, C4.9, WOLST)")->required();
    con->add_option("--primes", con_opt.primes, "prime range a..b")->required();
    con->add_option("--seq", con_opt.seq, "sequence spec kind[:k=v,...]");
    con->add_option("--param", con_opt.params, "Lucas parameters b=.., c=..");
    con->add_option("--format", con_opt.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    con->add_option("--out", con_opt.out_path, "output file (default: stdout)");

    try {
        app.parse(argc, argv);
        check_thread_env();
        if (gen->parsed()) return run_gen(gen_opt);
        if (cls->parsed()) return run_classify(cls_opt);
        if (ver->parsed()) return run_verify(ver_opt);
        if (con->parsed()) return run_congruence(con_opt);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "parityseq: " << e.what() << "\n";
        return 2;
    } catch (const ps::hypothesis_error& e) {
        std::cerr << "parityseq: hypothesis error: " << e.what() << "\n";
        return 2;
    } catch (const ps::valuation_error& e) {
        std::cerr << "parityseq: valuation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "parityseq: " << e.what() << "\n";
        return 2;
    }
}
