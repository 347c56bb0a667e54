#include "freqtrig/trigger_io.hpp"

#include <fstream>

#include "freqtrig/error.hpp"

namespace freqtrig {

Json trigger_to_json(const FrequencyTrigger& trigger) {
    Json entries = Json::array();
    for (const auto& e : trigger.entries) {
        entries.push_back({{"u", e.freq.u}, {"v", e.freq.v}, {"intensity", e.intensity}});
    }
    const auto& s = trigger.source;
    return Json{
        {"version", kTriggerFormatVersion},
        {"width", trigger.width},
        {"height", trigger.height},
        {"channels", trigger.channels},
        {"entries", entries},
        {"epsilon", trigger.epsilon},
        {"source",
         {{"dataset", s.dataset},
          {"target_class", s.target_class},
          {"top_n", s.top_n},
          {"candidate_pool", s.candidate_pool},
          {"filter", s.filter},
          {"delta", s.delta},
          {"sample_count", s.sample_count}}},
    };
}

FrequencyTrigger trigger_from_json(const Json& doc) {
    FrequencyTrigger t;
    try {
        const int version = doc.at("version").get<int>();
        if (version != kTriggerFormatVersion) {
            throw ParseError("unsupported trigger version " + std::to_string(version), 0);
        }
        t.width = doc.at("width").get<std::size_t>();
        t.height = doc.at("height").get<std::size_t>();
        t.channels = doc.at("channels").get<std::size_t>();
        t.epsilon = doc.at("epsilon").get<double>();
        for (const auto& e : doc.at("entries")) {
            t.entries.push_back({{e.at("u").get<std::size_t>(), e.at("v").get<std::size_t>()},
                                 e.at("intensity").get<std::vector<double>>()});
        }
        if (doc.contains("source")) {
            const auto& s = doc.at("source");
            t.source.dataset = s.value("dataset", std::string{});
            t.source.target_class = s.value("target_class", -1);
            t.source.top_n = s.value("top_n", std::size_t{0});
            t.source.candidate_pool = s.value("candidate_pool", std::size_t{0});
            t.source.filter = s.value("filter", std::string{});
            t.source.delta = s.value("delta", std::vector<double>{});
            t.source.sample_count = s.value("sample_count", std::size_t{0});
        }
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("malformed trigger document: ") + ex.what(), 0);
    }
    t.validate();
    return t;
}

void write_json(const Json& doc, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("failed writing " + path.string());
}

Json read_json(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& ex) {
        throw ParseError(path.string() + ": " + ex.what(), ex.byte);
    }
}

void save_trigger(const FrequencyTrigger& trigger, const std::filesystem::path& path) {
    trigger.validate();
    write_json(trigger_to_json(trigger), path);
}

FrequencyTrigger load_trigger(const std::filesystem::path& path) {
    return trigger_from_json(read_json(path));
}

}  // namespace freqtrig
