#include "latdist/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "latdist/sampling.hpp"

namespace latdist {

namespace {

using nlohmann::json;

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
    throw ConfigError("config field '" + field + "': " + why);
}

void reject_unknown_keys(const json& obj, const std::string& where,
                         std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) known = true;
        if (!known) bad_field(where + "." + item.key(), "unknown key");
    }
}

Topology parse_topology(const json& v, const std::string& field) {
    if (!v.is_string()) bad_field(field, "expected \"open\", \"cyclic\" or \"line\"");
    const std::string s = v.get<std::string>();
    if (s == "open") return Topology::Open;
    if (s == "cyclic") return Topology::Cyclic;
    if (s == "line") return Topology::TruncatedLine;
    bad_field(field, "unknown topology '" + s + "'");
}

DiracFamily parse_family(const json& v, const std::string& field) {
    if (!v.is_string()) bad_field(field, "expected \"dm\", \"naive\" or \"wilson\"");
    const std::string s = v.get<std::string>();
    if (s == "dm") return DiracFamily::DMGeneralized;
    if (s == "naive") return DiracFamily::Naive;
    if (s == "wilson") return DiracFamily::Wilson;
    bad_field(field, "unknown operator family '" + s + "'");
}

DistanceMethod parse_method(const json& v, const std::string& field) {
    if (!v.is_string()) bad_field(field, "expected a method name");
    const std::string s = v.get<std::string>();
    if (s == "closed") return DistanceMethod::ClosedForm;
    if (s == "numerical") return DistanceMethod::Numerical;
    if (s == "saturating") return DistanceMethod::Saturating;
    bad_field(field, "unknown method '" + s + "'");
}

cplx parse_link_value(const json& v, const std::string& field) {
    if (v.is_array()) {
        if (v.size() != 2 || !v[0].is_number() || !v[1].is_number())
            bad_field(field, "expected [re, im]");
        return cplx(v[0].get<double>(), v[1].get<double>());
    }
    if (v.is_object()) {
        reject_unknown_keys(v, field, {"amplitude", "phase"});
        if (!v.contains("amplitude") || !v.contains("phase"))
            bad_field(field, "expected {amplitude, phase}");
        return std::polar(v.at("amplitude").get<double>(), v.at("phase").get<double>());
    }
    bad_field(field, "expected [re, im] or {amplitude, phase}");
}

LinkSource parse_link_source(const json& v) {
    LinkSource out;
    if (v.is_string()) {
        if (v.get<std::string>() != "unit") bad_field("link", "unknown source string");
        out.kind = LinkSource::Kind::Unit;
        return out;
    }
    if (!v.is_object()) bad_field("link", "expected \"unit\" or an object");
    reject_unknown_keys(v, "link", {"kind", "values", "seed", "amplitude_range", "phase_range"});
    const std::string kind = v.value("kind", std::string("unit"));
    if (kind == "unit") {
        out.kind = LinkSource::Kind::Unit;
    } else if (kind == "inline") {
        out.kind = LinkSource::Kind::Inline;
        if (!v.contains("values") || !v.at("values").is_array())
            bad_field("link.values", "inline source needs an array of link values");
        int idx = 0;
        for (const auto& item : v.at("values")) {
            out.inline_values.push_back(
                parse_link_value(item, "link.values[" + std::to_string(idx) + "]"));
            ++idx;
        }
    } else if (kind == "random") {
        out.kind = LinkSource::Kind::Random;
        if (v.contains("seed")) out.seed = v.at("seed").get<std::uint64_t>();
        if (v.contains("amplitude_range")) {
            const auto& r = v.at("amplitude_range");
            if (!r.is_array() || r.size() != 2) bad_field("link.amplitude_range", "expected [lo, hi]");
            out.amp_lo = r[0].get<double>();
            out.amp_hi = r[1].get<double>();
            if (!(out.amp_lo > 0.0) || !(out.amp_hi >= out.amp_lo))
                bad_field("link.amplitude_range", "needs 0 < lo <= hi");
        }
        if (v.contains("phase_range")) {
            const auto& r = v.at("phase_range");
            if (!r.is_array() || r.size() != 2) bad_field("link.phase_range", "expected [lo, hi]");
            out.phase_lo = r[0].get<double>();
            out.phase_hi = r[1].get<double>();
        }
    } else {
        bad_field("link.kind", "unknown kind '" + kind + "'");
    }
    return out;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config root must be an object");
    reject_unknown_keys(doc, "config",
                        {"lattice", "link", "operator_family", "methods", "output", "tolerance",
                         "verify", "sweep"});

    RunConfig cfg;
    if (doc.contains("lattice")) {
        const auto& l = doc.at("lattice");
        if (!l.is_object()) bad_field("lattice", "expected an object");
        reject_unknown_keys(l, "lattice", {"topology", "sites", "window_pad"});
        if (l.contains("topology")) cfg.lattice.topology = parse_topology(l.at("topology"), "lattice.topology");
        if (l.contains("sites")) {
            if (!l.at("sites").is_number_integer()) bad_field("lattice.sites", "expected an integer");
            cfg.lattice.sites = l.at("sites").get<int>();
        }
        if (l.contains("window_pad")) {
            if (!l.at("window_pad").is_number_integer())
                bad_field("lattice.window_pad", "expected an integer");
            cfg.lattice.window_pad = l.at("window_pad").get<int>();
        }
        try {
            cfg.lattice.validate();
        } catch (const std::exception& e) {
            bad_field("lattice", e.what());
        }
    }
    if (doc.contains("link")) cfg.link = parse_link_source(doc.at("link"));
    if (doc.contains("operator_family"))
        cfg.family = parse_family(doc.at("operator_family"), "operator_family");
    if (doc.contains("methods")) {
        const auto& m = doc.at("methods");
        if (!m.is_array() || m.empty()) bad_field("methods", "expected a non-empty array");
        cfg.methods.clear();
        int idx = 0;
        for (const auto& item : m) {
            cfg.methods.push_back(parse_method(item, "methods[" + std::to_string(idx) + "]"));
            ++idx;
        }
    }
    if (doc.contains("output")) {
        const auto& o = doc.at("output");
        if (!o.is_object()) bad_field("output", "expected an object");
        reject_unknown_keys(o, "output", {"path", "format"});
        if (o.contains("path")) cfg.output_path = o.at("path").get<std::string>();
        if (o.contains("format")) {
            cfg.output_format = o.at("format").get<std::string>();
            if (cfg.output_format != "csv" && cfg.output_format != "json")
                bad_field("output.format", "expected \"csv\" or \"json\"");
        }
    }
    if (doc.contains("tolerance")) {
        const auto& t = doc.at("tolerance");
        if (!t.is_object()) bad_field("tolerance", "expected an object");
        reject_unknown_keys(t, "tolerance", {"optimizer_tol", "max_iters"});
        if (t.contains("optimizer_tol")) {
            cfg.optimizer.tol = t.at("optimizer_tol").get<double>();
            if (!(cfg.optimizer.tol > 0.0)) bad_field("tolerance.optimizer_tol", "must be positive");
        }
        if (t.contains("max_iters")) {
            cfg.optimizer.max_iters = t.at("max_iters").get<int>();
            if (cfg.optimizer.max_iters < 0) bad_field("tolerance.max_iters", "must be non-negative");
        }
    }
    if (doc.contains("verify")) {
        const auto& v = doc.at("verify");
        if (!v.is_object()) bad_field("verify", "expected an object");
        reject_unknown_keys(v, "verify", {"sites", "trials", "seed", "tol_scale"});
        if (v.contains("sites")) cfg.verify.sites = v.at("sites").get<int>();
        if (v.contains("trials")) cfg.verify.trials = v.at("trials").get<int>();
        if (v.contains("seed")) cfg.verify.seed = v.at("seed").get<std::uint64_t>();
        if (v.contains("tol_scale")) cfg.verify.tol_scale = v.at("tol_scale").get<double>();
        if (cfg.verify.sites < 2) bad_field("verify.sites", "needs at least 2 sites");
        if (cfg.verify.trials < 1) bad_field("verify.trials", "needs at least one trial");
        if (!(cfg.verify.tol_scale > 0.0)) bad_field("verify.tol_scale", "must be positive");
    }
    if (doc.contains("sweep")) {
        const auto& s = doc.at("sweep");
        if (!s.is_object()) bad_field("sweep", "expected an object");
        reject_unknown_keys(s, "sweep", {"parameter", "values", "pair"});
        SweepConfig sweep;
        if (!s.contains("parameter")) bad_field("sweep.parameter", "required");
        sweep.parameter = s.at("parameter").get<std::string>();
        if (sweep.parameter != "sites" && sweep.parameter != "amplitude_scale" &&
            sweep.parameter != "phase_magnitude")
            bad_field("sweep.parameter",
                      "expected \"sites\", \"amplitude_scale\" or \"phase_magnitude\"");
        if (!s.contains("values") || !s.at("values").is_array() || s.at("values").empty())
            bad_field("sweep.values", "expected a non-empty array");
        for (const auto& v : s.at("values")) sweep.values.push_back(v.get<double>());
        if (s.contains("pair")) {
            const auto& p = s.at("pair");
            if (!p.is_array() || p.size() != 2) bad_field("sweep.pair", "expected [i, j]");
            sweep.pair = std::make_pair(p[0].get<int>(), p[1].get<int>());
        }
        cfg.sweep = sweep;
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    return parse_run_config(read_text_file(path));
}

LinkField make_link_field(const RunConfig& cfg) {
    switch (cfg.link.kind) {
        case LinkSource::Kind::Unit:
            return unit_link_field(cfg.lattice);
        case LinkSource::Kind::Inline: {
            LinkField out;
            out.values = cfg.link.inline_values;
            if (out.size() != cfg.lattice.sites)
                throw ConfigError("config field 'link.values': has " +
                                  std::to_string(out.size()) + " entries, lattice has " +
                                  std::to_string(cfg.lattice.sites));
            try {
                validate_link_field(out, cfg.lattice);
            } catch (const std::exception& e) {
                throw ConfigError(std::string("config field 'link.values': ") + e.what());
            }
            return out;
        }
        case LinkSource::Kind::Random: {
            Rng rng(cfg.link.seed);
            return random_link_field(rng, cfg.lattice, cfg.link.amp_lo, cfg.link.amp_hi,
                                     cfg.link.phase_lo, cfg.link.phase_hi);
        }
    }
    throw ConfigError("link source not recognised");
}

std::string topology_name(Topology t) {
    switch (t) {
        case Topology::Open: return "open";
        case Topology::Cyclic: return "cyclic";
        case Topology::TruncatedLine: return "line";
    }
    return "?";
}

std::string method_name(DistanceMethod m) {
    switch (m) {
        case DistanceMethod::ClosedForm: return "closed";
        case DistanceMethod::Numerical: return "numerical";
        case DistanceMethod::Saturating: return "saturating";
    }
    return "?";
}

std::string family_name(DiracFamily f) {
    switch (f) {
        case DiracFamily::DMGeneralized: return "dm";
        case DiracFamily::Naive: return "naive";
        case DiracFamily::Wilson: return "wilson";
    }
    return "?";
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string distance_matrix_csv(const DistanceMatrix& m) {
    std::ostringstream out;
    out << "site";
    for (int j = 0; j < m.sites(); ++j) out << "," << j;
    out << "\n";
    for (int i = 0; i < m.sites(); ++i) {
        out << i;
        for (int j = 0; j < m.sites(); ++j) out << "," << format_double(m.values[i][j]);
        out << "\n";
    }
    return out.str();
}

std::string distance_matrix_json(const DistanceMatrix& m, const LatticeSpec& spec) {
    json doc;
    doc["schema_version"] = 1;
    doc["method"] = method_name(m.method);
    doc["topology"] = topology_name(spec.topology);
    doc["sites"] = spec.sites;
    doc["values"] = m.values;
    return doc.dump(2) + "\n";
}

std::string link_field_json(const LinkField& omega) {
    json values = json::array();
    for (const cplx& w : omega.values) values.push_back({w.real(), w.imag()});
    json doc;
    doc["schema_version"] = 1;
    doc["values"] = values;
    return doc.dump(2) + "\n";
}

LinkField parse_link_field_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("link field is not valid JSON: ") + e.what());
    }
    const json& values = doc.is_object() && doc.contains("values") ? doc.at("values") : doc;
    if (!values.is_array()) throw ConfigError("link field: expected an array of link values");
    LinkField out;
    int idx = 0;
    for (const auto& item : values) {
        out.values.push_back(parse_link_value(item, "values[" + std::to_string(idx) + "]"));
        ++idx;
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
    if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot read file: " + path);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

}  // namespace latdist
