#include "notchlab/design_io.hpp"

#include "notchlab/errors.hpp"

#include <json.hpp>

#include <fstream>

namespace notchlab {

namespace {

using nlohmann::json;

json to_json(const FilterSpec& spec) {
    return {
        {"f0_hz", spec.f0_hz},   {"delta", spec.delta}, {"order", spec.order},
        {"z0_ohm", spec.z0_ohm}, {"cc_f", spec.cc_f},   {"prototype", "butterworth"},
    };
}

FilterSpec spec_from_json(const json& j) {
    FilterSpec spec;
    spec.f0_hz = j.at("f0_hz").get<double>();
    spec.delta = j.at("delta").get<double>();
    spec.order = j.at("order").get<int>();
    spec.z0_ohm = j.at("z0_ohm").get<double>();
    spec.cc_f = j.at("cc_f").get<double>();
    const std::string proto = j.at("prototype").get<std::string>();
    if (proto != "butterworth")
        throw parse_error("unknown prototype kind '" + proto + "'");
    spec.prototype = PrototypeKind::butterworth;
    return spec;
}

json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot open '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw parse_error(path.string() + ": " + e.what());
    }
}

void save_json(const json& j, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw io_error("cannot open '" + path.string() + "' for writing");
    out << j.dump(2) << "\n";
    if (!out)
        throw io_error("failed writing '" + path.string() + "'");
}

} // namespace

DesignFile load_design(const std::filesystem::path& path) {
    const json j = load_json(path);
    try {
        DesignFile file;
        file.design.spec = spec_from_json(j.at("spec"));

        file.design.g.g = j.at("prototype_g").get<std::vector<double>>();

        const json& core = j.at("core");
        file.design.core.zt_ohm = core.at("zt_ohm").get<double>();
        file.design.core.l_h = core.at("l_h").get<double>();
        file.design.core.c_f = core.at("c_f").get<double>();
        file.design.core.k = core.at("k").get<double>();
        file.design.core.dk = core.at("dk").get<double>();

        const json& coupled = j.at("coupled");
        file.design.coupled.lm_h = coupled.at("lm_h").get<double>();
        file.design.coupled.l1_h = coupled.at("l1_h").get<double>();
        file.design.coupled.cm_f = coupled.at("cm_f").get<double>();
        file.design.coupled.c1_f = coupled.at("c1_f").get<double>();

        const json& practical = j.at("practical");
        file.design.practical.ca_f = practical.at("ca_f").get<double>();
        file.design.practical.cb_f = practical.at("cb_f").get<double>();
        file.design.practical.ck_f = practical.at("ck_f").get<double>();
        file.design.practical.cj_f = practical.at("cj_f").get<double>();
        file.design.practical.cc_f = practical.at("cc_f").get<double>();

        file.topology = topology_from_string(j.at("topology").get<std::string>());

        const json& loss = j.at("loss");
        file.loss.varactor_rs_ohm = loss.at("varactor_rs_ohm").get<double>();
        if (loss.contains("inductor_q") && !loss.at("inductor_q").is_null())
            file.loss.inductor_q = loss.at("inductor_q").get<double>();

        if (j.contains("varactor_profile") && !j.at("varactor_profile").is_null())
            file.varactor_profile = j.at("varactor_profile").get<std::string>();
        return file;
    } catch (const json::exception& e) {
        throw parse_error(path.string() + ": " + e.what());
    }
}

void save_design(const DesignFile& file, const std::filesystem::path& path) {
    const SynthesizedDesign& d = file.design;
    json j = {
        {"spec", to_json(d.spec)},
        {"prototype_g", d.g.g},
        {"core",
         {{"zt_ohm", d.core.zt_ohm},
          {"l_h", d.core.l_h},
          {"c_f", d.core.c_f},
          {"k", d.core.k},
          {"dk", d.core.dk}}},
        {"coupled",
         {{"lm_h", d.coupled.lm_h},
          {"l1_h", d.coupled.l1_h},
          {"cm_f", d.coupled.cm_f},
          {"c1_f", d.coupled.c1_f}}},
        {"practical",
         {{"ca_f", d.practical.ca_f},
          {"cb_f", d.practical.cb_f},
          {"ck_f", d.practical.ck_f},
          {"cj_f", d.practical.cj_f},
          {"cc_f", d.practical.cc_f}}},
        {"topology", std::string(to_string(file.topology))},
        {"loss",
         {{"varactor_rs_ohm", file.loss.varactor_rs_ohm},
          {"inductor_q", file.loss.inductor_q ? json(*file.loss.inductor_q) : json(nullptr)}}},
    };
    if (file.varactor_profile)
        j["varactor_profile"] = *file.varactor_profile;
    save_json(j, path);
}

VaractorModel load_varactor_profile(const std::filesystem::path& path) {
    const json j = load_json(path);
    try {
        VaractorModel model;
        model.cj0_f = j.at("cj0_f").get<double>();
        model.vj_v = j.at("vj_v").get<double>();
        model.m = j.at("m").get<double>();
        model.cp_f = j.at("cp_f").get<double>();
        model.rs_ohm = j.at("rs_ohm").get<double>();
        model.v_min_v = j.at("v_min_v").get<double>();
        model.v_max_v = j.at("v_max_v").get<double>();
        model.validate();
        return model;
    } catch (const json::exception& e) {
        throw parse_error(path.string() + ": " + e.what());
    }
}

void save_varactor_profile(const VaractorModel& model, const std::filesystem::path& path,
                           const std::string& comment) {
    json j = {
        {"cj0_f", model.cj0_f},   {"vj_v", model.vj_v},       {"m", model.m},
        {"cp_f", model.cp_f},     {"rs_ohm", model.rs_ohm},   {"v_min_v", model.v_min_v},
        {"v_max_v", model.v_max_v},
    };
    if (!comment.empty())
        j["comment"] = comment;
    save_json(j, path);
}

} // namespace notchlab
