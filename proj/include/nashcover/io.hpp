#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nashcover/common.hpp"
#include "nashcover/core.hpp"
#include "nashcover/families.hpp"
#include "nashcover/generators.hpp"
#include "nashcover/instance.hpp"
#include "nashcover/reductions.hpp"
#include "nashcover/solver.hpp"

namespace nashcover {

// ---------------------------------------------------------------------------
// Emission.  Hand-rolled writer so key order and float formatting are part
// of the format contract: reals always carry 17 significant digits, which
// round-trips any double, and emission is byte-identical across platforms.

class JsonWriter {
public:
    void obj_open() { sep(); out_ += '{'; }
    void obj_close() { out_ += '}'; }
    void arr_open() { sep(); out_ += '['; }
    void arr_close() { out_ += ']'; }

    void key(std::string_view k) {
        sep();
        quote(k);
        out_ += ':';
    }

    void val(std::string_view s) {
        sep();
        quote(s);
    }
    void val(const char* s) { val(std::string_view(s)); }
    void val(bool b) {
        sep();
        out_ += b ? "true" : "false";
    }
    void val(int v) { val(static_cast<std::int64_t>(v)); }
    void val(std::int64_t v) {
        sep();
        out_ += std::to_string(v);
    }
    void val(std::uint64_t v) {
        sep();
        out_ += std::to_string(v);
    }
    void val(double v) {
        sep();
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof buf, v);
        out_.append(buf, res.ptr);
    }
    void val(const AgentSet& s) {
        arr_open();
        for (int a : s) val(a);
        arr_close();
    }

    std::string take() { return std::move(out_); }

private:
    void sep() {
        if (out_.empty()) return;
        char c = out_.back();
        if (c != '{' && c != '[' && c != ':') out_ += ',';
    }

    void quote(std::string_view s) {
        out_ += '"';
        for (char c : s) {
            switch (c) {
                case '"': out_ += "\\\""; break;
                case '\\': out_ += "\\\\"; break;
                case '\n': out_ += "\\n"; break;
                case '\t': out_ += "\\t"; break;
                case '\r': out_ += "\\r"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof buf, "\\u%04x", c);
                        out_ += buf;
                    } else {
                        out_ += c;
                    }
            }
        }
        out_ += '"';
    }

    std::string out_;
};

namespace iodetail {

inline void emit_family(JsonWriter& w, const ConstraintFamily& fam) {
    w.obj_open();
    w.key("kind");
    w.val(family_kind_name(fam.kind()));
    switch (fam.kind()) {
        case FamilyKind::Explicit: {
            const auto& f = std::get<ExplicitFamily>(fam.payload);
            w.key("sets");
            w.arr_open();
            for (const AgentSet& s : f.sets) w.val(s);
            w.arr_close();
            break;
        }
        case FamilyKind::Knapsack: {
            const auto& f = std::get<KnapsackFamily>(fam.payload);
            w.key("demands");
            w.arr_open();
            for (std::int64_t d : f.demands) w.val(d);
            w.arr_close();
            w.key("capacity");
            w.val(f.capacity);
            break;
        }
        case FamilyKind::Cardinality:
            w.key("k");
            w.val(std::get<CardinalityFamily>(fam.payload).k);
            break;
        case FamilyKind::Partition: {
            const auto& f = std::get<PartitionFamily>(fam.payload);
            w.key("parts");
            w.arr_open();
            for (const AgentSet& p : f.parts) w.val(p);
            w.arr_close();
            w.key("limits");
            w.arr_open();
            for (int c : f.limits) w.val(c);
            w.arr_close();
            break;
        }
        case FamilyKind::Matching: {
            const auto& f = std::get<MatchingFamily>(fam.payload);
            w.key("slots");
            w.val(f.slots);
            w.key("prefs");
            w.arr_open();
            for (const auto& p : f.prefs) {
                w.arr_open();
                for (int s : p) w.val(s);
                w.arr_close();
            }
            w.arr_close();
            break;
        }
    }
    w.obj_close();
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace iodetail

inline std::string emit_instance_json(const Instance& inst) {
    JsonWriter w;
    w.obj_open();
    w.key("format_version");
    w.val(1);
    w.key("n");
    w.val(inst.n);
    w.key("T");
    w.val(inst.rounds());
    w.key("families");
    w.arr_open();
    for (const ConstraintFamily& fam : inst.families) iodetail::emit_family(w, fam);
    w.arr_close();
    w.obj_close();
    std::string s = w.take();
    s += '\n';
    return s;
}

struct SolutionFileData {
    Solution solution;
    double nsw_value = 0;
    double phi = 0;
    std::optional<double> nsw_c;  // present for unsmoothed runs
};

inline std::string emit_solution_json(const SolutionFileData& data) {
    JsonWriter w;
    w.obj_open();
    w.key("format_version");
    w.val(1);
    w.key("sets");
    w.arr_open();
    for (const AgentSet& s : data.solution.sets) w.val(s);
    w.arr_close();
    w.key("nsw");
    w.val(data.nsw_value);
    w.key("phi");
    w.val(data.phi);
    if (data.nsw_c) {
        w.key("nsw_c");
        w.val(*data.nsw_c);
    }
    w.obj_close();
    std::string s = w.take();
    s += '\n';
    return s;
}

inline const char* trace_level_name(TraceLevel lv) {
    switch (lv) {
        case TraceLevel::none: return "none";
        case TraceLevel::summary: return "summary";
        case TraceLevel::full: return "full";
    }
    return "?";
}

inline std::string emit_trace_json(const SolveTrace& trace) {
    JsonWriter w;
    w.obj_open();
    w.key("format_version");
    w.val(1);
    w.key("config");
    w.obj_open();
    w.key("epsilon");
    w.val(trace.epsilon);
    w.key("beta");
    w.val(trace.beta);
    w.key("max_iterations");
    w.val(trace.max_iterations);
    w.key("epsilon_overridden");
    w.val(trace.epsilon_overridden);
    w.key("beta_overridden");
    w.val(trace.beta_overridden);
    w.key("init");
    w.val(trace.init_given ? "given" : "default");
    w.key("trace_level");
    w.val(trace_level_name(trace.level));
    w.obj_close();
    w.key("initial");
    w.arr_open();
    for (const AgentSet& s : trace.initial.sets) w.val(s);
    w.arr_close();
    w.key("iterations");
    w.arr_open();
    for (const IterationRecord& rec : trace.iterations) {
        w.obj_open();
        w.key("iter");
        w.val(rec.iter);
        w.key("tau");
        w.val(rec.tau);
        w.key("delta_phi");
        w.val(rec.delta_phi);
        w.key("phi_before");
        w.val(rec.phi_before);
        w.key("phi_after");
        w.val(rec.phi_after);
        w.key("chosen_set");
        w.val(rec.chosen_set);
        w.key("weights_digest");
        w.val(iodetail::hex64(rec.weights_digest));
        if (trace.level == TraceLevel::full) {
            w.key("candidates");
            w.arr_open();
            for (const CandidateRecord& c : rec.candidates) {
                w.obj_open();
                w.key("t");
                w.val(c.t);
                w.key("set");
                w.val(c.set);
                w.key("weight");
                w.val(c.weight);
                w.key("delta_phi");
                w.val(c.delta_phi);
                w.obj_close();
            }
            w.arr_close();
        }
        w.obj_close();
    }
    w.arr_close();
    w.key("total_updates");
    w.val(trace.total_updates);
    w.key("terminal");
    w.val(trace.terminal == Terminal::converged ? "converged" : "iteration_guard_hit");
    w.obj_close();
    std::string s = w.take();
    s += '\n';
    return s;
}

inline std::string emit_genspec_json(const GenSpec& spec) {
    JsonWriter w;
    w.obj_open();
    w.key("format_version");
    w.val(1);
    w.key("seed");
    w.val(spec.seed);
    w.key("n");
    w.val(spec.n);
    w.key("T");
    w.val(spec.T);
    w.key("kind");
    w.val(family_kind_name(spec.kind));
    switch (spec.kind) {
        case FamilyKind::Explicit:
            w.key("sets_per_round");
            w.val(spec.sets_per_round);
            w.key("set_size_min");
            w.val(spec.set_size_min);
            w.key("set_size_max");
            w.val(spec.set_size_max);
            break;
        case FamilyKind::Knapsack:
            w.key("demand_min");
            w.val(spec.demand_min);
            w.key("demand_max");
            w.val(spec.demand_max);
            if (spec.supply_min) {
                w.key("supply_min");
                w.val(*spec.supply_min);
            }
            if (spec.supply_max) {
                w.key("supply_max");
                w.val(*spec.supply_max);
            }
            break;
        case FamilyKind::Cardinality:
            w.key("k_min");
            w.val(spec.k_min);
            w.key("k_max");
            w.val(spec.k_max);
            break;
        case FamilyKind::Partition:
            w.key("parts");
            w.val(spec.parts);
            w.key("limit_min");
            w.val(spec.limit_min);
            w.key("limit_max");
            w.val(spec.limit_max);
            break;
        case FamilyKind::Matching:
            w.key("slots");
            w.val(spec.slots);
            w.key("density");
            w.val(spec.density);
            break;
    }
    w.obj_close();
    std::string s = w.take();
    s += '\n';
    return s;
}

inline std::string emit_suitespec_json(const SuiteSpec& spec) {
    JsonWriter w;
    w.obj_open();
    w.key("format_version");
    w.val(1);
    w.key("seed");
    w.val(spec.seed);
    w.key("count");
    w.val(spec.count);
    w.key("n_max");
    w.val(spec.n_max);
    w.key("t_max");
    w.val(spec.t_max);
    w.key("family_cap");
    w.val(spec.family_cap);
    w.key("enum_limit");
    w.val(spec.enum_limit);
    w.key("kinds");
    w.arr_open();
    for (FamilyKind k : spec.kinds) w.val(family_kind_name(k));
    w.arr_close();
    w.key("exact");
    w.val(spec.exact);
    w.obj_close();
    std::string s = w.take();
    s += '\n';
    return s;
}

struct BenchRow {
    std::uint64_t id = 0;
    int n = 0;
    int T = 0;
    std::string kind;
    std::optional<double> nsw_alg;
    std::optional<double> nsw_opt;
    std::optional<double> ratio;
    std::optional<std::int64_t> iterations;
    std::optional<std::int64_t> bound;
    std::optional<double> wallclock_ms;
    std::string error;  // empty on success
};

struct BenchReport {
    std::vector<BenchRow> rows;
    int errors = 0;
    std::optional<double> min_ratio;
    std::optional<double> median_ratio;
};

inline std::string emit_report_json(const BenchReport& report) {
    JsonWriter w;
    w.obj_open();
    w.key("format_version");
    w.val(1);
    w.key("rows");
    w.arr_open();
    for (const BenchRow& r : report.rows) {
        w.obj_open();
        w.key("id");
        w.val(r.id);
        w.key("n");
        w.val(r.n);
        w.key("T");
        w.val(r.T);
        w.key("kind");
        w.val(r.kind);
        if (r.nsw_alg) {
            w.key("nsw_alg");
            w.val(*r.nsw_alg);
        }
        if (r.nsw_opt) {
            w.key("nsw_opt");
            w.val(*r.nsw_opt);
        }
        if (r.ratio) {
            w.key("ratio");
            w.val(*r.ratio);
        }
        if (r.iterations) {
            w.key("iterations");
            w.val(*r.iterations);
        }
        if (r.bound) {
            w.key("bound");
            w.val(*r.bound);
        }
        if (r.wallclock_ms) {
            w.key("wallclock_ms");
            w.val(*r.wallclock_ms);
        }
        if (!r.error.empty()) {
            w.key("error");
            w.val(r.error);
        }
        w.obj_close();
    }
    w.arr_close();
    w.key("summary");
    w.obj_open();
    w.key("count");
    w.val(static_cast<std::int64_t>(report.rows.size()));
    w.key("errors");
    w.val(report.errors);
    if (report.min_ratio) {
        w.key("min_ratio");
        w.val(*report.min_ratio);
    }
    if (report.median_ratio) {
        w.key("median_ratio");
        w.val(*report.median_ratio);
    }
    w.obj_close();
    w.obj_close();
    std::string s = w.take();
    s += '\n';
    return s;
}

inline std::string emit_report_csv(const BenchReport& report) {
    auto csv_escape = [](const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string out = "\"";
        for (char c : s) {
            if (c == '"') out += "\"\"";
            else out += c;
        }
        out += '"';
        return out;
    };
    auto fmt = [](double v) {
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, res.ptr);
    };
    std::string out = "id,n,T,kind,nsw_alg,nsw_opt,ratio,iterations,bound,wallclock_ms,error\n";
    for (const BenchRow& r : report.rows) {
        out += std::to_string(r.id);
        out += ',';
        out += std::to_string(r.n);
        out += ',';
        out += std::to_string(r.T);
        out += ',';
        out += csv_escape(r.kind);
        out += ',';
        if (r.nsw_alg) out += fmt(*r.nsw_alg);
        out += ',';
        if (r.nsw_opt) out += fmt(*r.nsw_opt);
        out += ',';
        if (r.ratio) out += fmt(*r.ratio);
        out += ',';
        if (r.iterations) out += std::to_string(*r.iterations);
        out += ',';
        if (r.bound) out += std::to_string(*r.bound);
        out += ',';
        if (r.wallclock_ms) out += fmt(*r.wallclock_ms);
        out += ',';
        out += csv_escape(r.error);
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parsing (strict: format_version pinned, integer fields must be integers,
// agent sets must be strictly increasing).

namespace iodetail {

using nlohmann::json;

inline json parse_text(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw invalid_input_error(std::string(what) + ": " + e.what());
    }
}

inline const json& req(const json& j, const char* key, const char* what) {
    auto it = j.find(key);
    if (it == j.end())
        throw invalid_input_error(std::string(what) + ": missing key '" + key + "'");
    return *it;
}

inline std::int64_t req_int(const json& j, const char* key, const char* what) {
    const json& v = req(j, key, what);
    if (!v.is_number_integer())
        throw invalid_input_error(std::string(what) + ": '" + key + "' must be an integer");
    return v.get<std::int64_t>();
}

inline std::uint64_t req_uint(const json& j, const char* key, const char* what) {
    const json& v = req(j, key, what);
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                   v.get<std::int64_t>() < 0))
        throw invalid_input_error(std::string(what) + ": '" + key + "' must be a non-negative integer");
    return v.get<std::uint64_t>();
}

inline double req_double(const json& j, const char* key, const char* what) {
    const json& v = req(j, key, what);
    if (!v.is_number())
        throw invalid_input_error(std::string(what) + ": '" + key + "' must be a number");
    return v.get<double>();
}

inline bool req_bool(const json& j, const char* key, const char* what) {
    const json& v = req(j, key, what);
    if (!v.is_boolean())
        throw invalid_input_error(std::string(what) + ": '" + key + "' must be a boolean");
    return v.get<bool>();
}

inline std::string req_string(const json& j, const char* key, const char* what) {
    const json& v = req(j, key, what);
    if (!v.is_string())
        throw invalid_input_error(std::string(what) + ": '" + key + "' must be a string");
    return v.get<std::string>();
}

inline void check_version(const json& j, const char* what) {
    if (req_int(j, "format_version", what) != 1)
        throw invalid_input_error(std::string(what) + ": unsupported format_version");
}

inline std::vector<int> int_array(const json& v, const char* what) {
    if (!v.is_array())
        throw invalid_input_error(std::string(what) + ": expected an array of integers");
    std::vector<int> out;
    out.reserve(v.size());
    for (const json& e : v) {
        if (!e.is_number_integer())
            throw invalid_input_error(std::string(what) + ": expected an array of integers");
        out.push_back(e.get<int>());
    }
    return out;
}

inline AgentSet agent_set(const json& v, const char* what) {
    AgentSet s = int_array(v, what);
    if (!is_canonical(s))
        throw invalid_input_error(std::string(what) +
                                  ": agent set must be strictly increasing");
    return s;
}

inline std::vector<AgentSet> agent_set_array(const json& v, const char* what) {
    if (!v.is_array())
        throw invalid_input_error(std::string(what) + ": expected an array of agent sets");
    std::vector<AgentSet> out;
    out.reserve(v.size());
    for (const json& e : v) out.push_back(agent_set(e, what));
    return out;
}

inline FamilyKind parse_kind(const std::string& name, const char* what) {
    if (name == "explicit") return FamilyKind::Explicit;
    if (name == "knapsack") return FamilyKind::Knapsack;
    if (name == "cardinality") return FamilyKind::Cardinality;
    if (name == "partition") return FamilyKind::Partition;
    if (name == "matching") return FamilyKind::Matching;
    throw invalid_input_error(std::string(what) + ": unknown family kind '" + name + "'");
}

inline ConstraintFamily parse_family(const json& j, const char* what) {
    if (!j.is_object())
        throw invalid_input_error(std::string(what) + ": family must be an object");
    const FamilyKind kind = parse_kind(req_string(j, "kind", what), what);
    switch (kind) {
        case FamilyKind::Explicit:
            return ConstraintFamily::make_explicit(agent_set_array(req(j, "sets", what), what));
        case FamilyKind::Knapsack: {
            const json& d = req(j, "demands", what);
            if (!d.is_array())
                throw invalid_input_error(std::string(what) + ": 'demands' must be an array");
            std::vector<std::int64_t> demands;
            demands.reserve(d.size());
            for (const json& e : d) {
                if (!e.is_number_integer())
                    throw invalid_input_error(std::string(what) + ": demands must be integers");
                demands.push_back(e.get<std::int64_t>());
            }
            return ConstraintFamily::make_knapsack(std::move(demands),
                                                   req_int(j, "capacity", what));
        }
        case FamilyKind::Cardinality:
            return ConstraintFamily::make_cardinality(static_cast<int>(req_int(j, "k", what)));
        case FamilyKind::Partition: {
            std::vector<AgentSet> parts = agent_set_array(req(j, "parts", what), what);
            std::vector<int> limits = int_array(req(j, "limits", what), what);
            return ConstraintFamily::make_partition(std::move(parts), std::move(limits));
        }
        case FamilyKind::Matching: {
            const json& p = req(j, "prefs", what);
            if (!p.is_array())
                throw invalid_input_error(std::string(what) + ": 'prefs' must be an array");
            std::vector<std::vector<int>> prefs;
            prefs.reserve(p.size());
            for (const json& e : p) prefs.push_back(int_array(e, what));
            return ConstraintFamily::make_matching(static_cast<int>(req_int(j, "slots", what)),
                                                   std::move(prefs));
        }
    }
    throw invalid_input_error(std::string(what) + ": unreachable family kind");
}

}  // namespace iodetail

inline Instance parse_instance_json(const std::string& text) {
    const char* what = "instance file";
    const auto j = iodetail::parse_text(text, what);
    iodetail::check_version(j, what);
    Instance inst;
    inst.n = static_cast<int>(iodetail::req_int(j, "n", what));
    const std::int64_t T = iodetail::req_int(j, "T", what);
    const auto& fams = iodetail::req(j, "families", what);
    if (!fams.is_array())
        throw invalid_input_error(std::string(what) + ": 'families' must be an array");
    if (static_cast<std::int64_t>(fams.size()) != T)
        throw invalid_input_error(std::string(what) + ": T does not match family count");
    for (const auto& f : fams) inst.families.push_back(iodetail::parse_family(f, what));
    validate_instance(inst);
    return inst;
}

inline SolutionFileData parse_solution_json(const std::string& text) {
    const char* what = "solution file";
    const auto j = iodetail::parse_text(text, what);
    iodetail::check_version(j, what);
    SolutionFileData data;
    data.solution.sets = iodetail::agent_set_array(iodetail::req(j, "sets", what), what);
    data.nsw_value = iodetail::req_double(j, "nsw", what);
    data.phi = iodetail::req_double(j, "phi", what);
    if (j.contains("nsw_c")) data.nsw_c = iodetail::req_double(j, "nsw_c", what);
    return data;
}

inline TraceLevel parse_trace_level(const std::string& name) {
    if (name == "none") return TraceLevel::none;
    if (name == "summary") return TraceLevel::summary;
    if (name == "full") return TraceLevel::full;
    throw invalid_input_error("unknown trace level '" + name + "'");
}

inline SolveTrace parse_trace_json(const std::string& text) {
    const char* what = "trace file";
    const auto j = iodetail::parse_text(text, what);
    iodetail::check_version(j, what);
    SolveTrace trace;
    const auto& cfg = iodetail::req(j, "config", what);
    trace.epsilon = iodetail::req_double(cfg, "epsilon", what);
    trace.beta = iodetail::req_double(cfg, "beta", what);
    trace.max_iterations = iodetail::req_int(cfg, "max_iterations", what);
    trace.epsilon_overridden = iodetail::req_bool(cfg, "epsilon_overridden", what);
    trace.beta_overridden = iodetail::req_bool(cfg, "beta_overridden", what);
    trace.init_given = iodetail::req_string(cfg, "init", what) == "given";
    trace.level = parse_trace_level(iodetail::req_string(cfg, "trace_level", what));
    trace.initial.sets = iodetail::agent_set_array(iodetail::req(j, "initial", what), what);
    const auto& iters = iodetail::req(j, "iterations", what);
    if (!iters.is_array())
        throw invalid_input_error(std::string(what) + ": 'iterations' must be an array");
    for (const auto& r : iters) {
        IterationRecord rec;
        rec.iter = iodetail::req_int(r, "iter", what);
        rec.tau = static_cast<int>(iodetail::req_int(r, "tau", what));
        rec.delta_phi = iodetail::req_double(r, "delta_phi", what);
        rec.phi_before = iodetail::req_double(r, "phi_before", what);
        rec.phi_after = iodetail::req_double(r, "phi_after", what);
        rec.chosen_set = iodetail::agent_set(iodetail::req(r, "chosen_set", what), what);
        const std::string hex = iodetail::req_string(r, "weights_digest", what);
        rec.weights_digest = std::stoull(hex, nullptr, 16);
        if (r.contains("candidates")) {
            for (const auto& c : r["candidates"]) {
                CandidateRecord cand;
                cand.t = static_cast<int>(iodetail::req_int(c, "t", what));
                cand.set = iodetail::agent_set(iodetail::req(c, "set", what), what);
                cand.weight = iodetail::req_double(c, "weight", what);
                cand.delta_phi = iodetail::req_double(c, "delta_phi", what);
                rec.candidates.push_back(std::move(cand));
            }
        }
        trace.iterations.push_back(std::move(rec));
    }
    trace.total_updates = iodetail::req_int(j, "total_updates", what);
    const std::string term = iodetail::req_string(j, "terminal", what);
    if (term == "converged") trace.terminal = Terminal::converged;
    else if (term == "iteration_guard_hit") trace.terminal = Terminal::iteration_guard_hit;
    else throw invalid_input_error(std::string(what) + ": unknown terminal '" + term + "'");
    return trace;
}

inline GenSpec parse_genspec_json(const std::string& text) {
    const char* what = "genspec file";
    const auto j = iodetail::parse_text(text, what);
    iodetail::check_version(j, what);
    GenSpec spec;
    spec.seed = iodetail::req_uint(j, "seed", what);
    spec.n = static_cast<int>(iodetail::req_int(j, "n", what));
    spec.T = static_cast<int>(iodetail::req_int(j, "T", what));
    spec.kind = iodetail::parse_kind(iodetail::req_string(j, "kind", what), what);
    switch (spec.kind) {
        case FamilyKind::Explicit:
            spec.sets_per_round = static_cast<int>(iodetail::req_int(j, "sets_per_round", what));
            spec.set_size_min = static_cast<int>(iodetail::req_int(j, "set_size_min", what));
            spec.set_size_max = static_cast<int>(iodetail::req_int(j, "set_size_max", what));
            break;
        case FamilyKind::Knapsack:
            spec.demand_min = iodetail::req_int(j, "demand_min", what);
            spec.demand_max = iodetail::req_int(j, "demand_max", what);
            if (j.contains("supply_min")) spec.supply_min = iodetail::req_int(j, "supply_min", what);
            if (j.contains("supply_max")) spec.supply_max = iodetail::req_int(j, "supply_max", what);
            break;
        case FamilyKind::Cardinality:
            spec.k_min = static_cast<int>(iodetail::req_int(j, "k_min", what));
            spec.k_max = static_cast<int>(iodetail::req_int(j, "k_max", what));
            break;
        case FamilyKind::Partition:
            spec.parts = static_cast<int>(iodetail::req_int(j, "parts", what));
            spec.limit_min = static_cast<int>(iodetail::req_int(j, "limit_min", what));
            spec.limit_max = static_cast<int>(iodetail::req_int(j, "limit_max", what));
            break;
        case FamilyKind::Matching:
            spec.slots = static_cast<int>(iodetail::req_int(j, "slots", what));
            spec.density = iodetail::req_double(j, "density", what);
            break;
    }
    validate_genspec(spec);
    return spec;
}

inline SuiteSpec parse_suitespec_json(const std::string& text) {
    const char* what = "suite file";
    const auto j = iodetail::parse_text(text, what);
    iodetail::check_version(j, what);
    SuiteSpec spec;
    spec.seed = iodetail::req_uint(j, "seed", what);
    spec.count = static_cast<int>(iodetail::req_int(j, "count", what));
    spec.n_max = static_cast<int>(iodetail::req_int(j, "n_max", what));
    spec.t_max = static_cast<int>(iodetail::req_int(j, "t_max", what));
    spec.family_cap = iodetail::req_uint(j, "family_cap", what);
    spec.enum_limit = iodetail::req_uint(j, "enum_limit", what);
    const auto& kinds = iodetail::req(j, "kinds", what);
    if (!kinds.is_array() || kinds.empty())
        throw invalid_input_error(std::string(what) + ": 'kinds' must be a non-empty array");
    spec.kinds.clear();
    for (const auto& k : kinds) {
        if (!k.is_string())
            throw invalid_input_error(std::string(what) + ": 'kinds' entries must be strings");
        spec.kinds.push_back(iodetail::parse_kind(k.get<std::string>(), what));
    }
    spec.exact = iodetail::req_bool(j, "exact", what);
    validate_suitespec(spec);
    return spec;
}

inline BenchReport parse_report_json(const std::string& text) {
    const char* what = "report file";
    const auto j = iodetail::parse_text(text, what);
    iodetail::check_version(j, what);
    BenchReport report;
    const auto& rows = iodetail::req(j, "rows", what);
    if (!rows.is_array())
        throw invalid_input_error(std::string(what) + ": 'rows' must be an array");
    for (const auto& r : rows) {
        BenchRow row;
        row.id = iodetail::req_uint(r, "id", what);
        row.n = static_cast<int>(iodetail::req_int(r, "n", what));
        row.T = static_cast<int>(iodetail::req_int(r, "T", what));
        row.kind = iodetail::req_string(r, "kind", what);
        if (r.contains("nsw_alg")) row.nsw_alg = iodetail::req_double(r, "nsw_alg", what);
        if (r.contains("nsw_opt")) row.nsw_opt = iodetail::req_double(r, "nsw_opt", what);
        if (r.contains("ratio")) row.ratio = iodetail::req_double(r, "ratio", what);
        if (r.contains("iterations")) row.iterations = iodetail::req_int(r, "iterations", what);
        if (r.contains("bound")) row.bound = iodetail::req_int(r, "bound", what);
        if (r.contains("wallclock_ms")) row.wallclock_ms = iodetail::req_double(r, "wallclock_ms", what);
        if (r.contains("error")) row.error = iodetail::req_string(r, "error", what);
        report.rows.push_back(std::move(row));
    }
    const auto& summary = iodetail::req(j, "summary", what);
    report.errors = static_cast<int>(iodetail::req_int(summary, "errors", what));
    if (summary.contains("min_ratio"))
        report.min_ratio = iodetail::req_double(summary, "min_ratio", what);
    if (summary.contains("median_ratio"))
        report.median_ratio = iodetail::req_double(summary, "median_ratio", what);
    return report;
}

inline MaxCoverageInput parse_max_coverage_json(const std::string& text) {
    const char* what = "max coverage file";
    const auto j = iodetail::parse_text(text, what);
    iodetail::check_version(j, what);
    MaxCoverageInput in;
    in.universe_size = static_cast<int>(iodetail::req_int(j, "universe_size", what));
    in.sets = iodetail::agent_set_array(iodetail::req(j, "sets", what), what);
    in.k = static_cast<int>(iodetail::req_int(j, "k", what));
    in.uniform_size = static_cast<int>(iodetail::req_int(j, "uniform_size", what));
    return in;
}

inline PublicDecisionInput parse_public_decisions_json(const std::string& text) {
    const char* what = "public decisions file";
    const auto j = iodetail::parse_text(text, what);
    iodetail::check_version(j, what);
    PublicDecisionInput in;
    in.n = static_cast<int>(iodetail::req_int(j, "n", what));
    const auto& issues = iodetail::req(j, "issues", what);
    if (!issues.is_array())
        throw invalid_input_error(std::string(what) + ": 'issues' must be an array");
    for (const auto& issue : issues) {
        if (!issue.is_array())
            throw invalid_input_error(std::string(what) + ": each issue must be an array of utility vectors");
        std::vector<std::vector<int>> alts;
        for (const auto& alt : issue) alts.push_back(iodetail::int_array(alt, what));
        in.issues.push_back(std::move(alts));
    }
    return in;
}

inline GoodsAllocationInput parse_goods_json(const std::string& text) {
    const char* what = "goods allocation file";
    const auto j = iodetail::parse_text(text, what);
    iodetail::check_version(j, what);
    GoodsAllocationInput in;
    in.n = static_cast<int>(iodetail::req_int(j, "n", what));
    in.m = static_cast<int>(iodetail::req_int(j, "m", what));
    in.valued = iodetail::agent_set_array(iodetail::req(j, "valued", what), what);
    return in;
}

inline VertexCoverInput parse_vertex_cover_json(const std::string& text) {
    const char* what = "vertex cover file";
    const auto j = iodetail::parse_text(text, what);
    iodetail::check_version(j, what);
    VertexCoverInput in;
    in.vertices = static_cast<int>(iodetail::req_int(j, "vertices", what));
    const auto& edges = iodetail::req(j, "edges", what);
    if (!edges.is_array())
        throw invalid_input_error(std::string(what) + ": 'edges' must be an array");
    for (const auto& e : edges) {
        std::vector<int> pair = iodetail::int_array(e, what);
        if (pair.size() != 2)
            throw invalid_input_error(std::string(what) + ": each edge needs exactly two endpoints");
        in.edges.emplace_back(pair[0], pair[1]);
    }
    in.k = static_cast<int>(iodetail::req_int(j, "k", what));
    return in;
}

// ---------------------------------------------------------------------------
// Files.

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw invalid_input_error("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw invalid_input_error("error while reading '" + path + "'");
    return ss.str();
}

// Write to a sibling temp file, then rename over the target, so a failed
// run never leaves a partial output file behind.
inline void write_text_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw invalid_input_error("cannot open '" + tmp + "' for writing");
        out << content;
        out.flush();
        if (!out) throw invalid_input_error("error while writing '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw invalid_input_error("cannot rename '" + tmp + "' to '" + path + "'");
    }
}

}  // namespace nashcover
