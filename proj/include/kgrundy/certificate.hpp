#pragma once

#include <kgrundy/errors.hpp>
#include <kgrundy/forcing.hpp>
#include <kgrundy/sequence.hpp>

#include <json.hpp>

#include <sstream>
#include <string>
#include <string_view>

namespace kgrundy
{
    using nlohmann::json;

    /// {"variant": "l", "k": 2, "sequence": [...], "witnesses": [...]}
    inline auto to_json(const GrundySequence & seq) -> json
    {
        return json{ { "variant", to_string(seq.variant) }, { "k", seq.k }, { "sequence", seq.order }, { "witnesses", seq.witnesses } };
    }

    inline auto sequence_from_json(const json & j) -> GrundySequence
    {
        try {
            GrundySequence seq;
            seq.variant = parse_variant(j.at("variant").get<std::string>());
            seq.k = j.at("k").get<int>();
            seq.order = j.at("sequence").get<std::vector<Vertex>>();
            if (j.contains("witnesses"))
                seq.witnesses = j.at("witnesses").get<std::vector<Vertex>>();
            return seq;
        }
        catch (const json::exception & e) {
            throw ParseError(std::string("certificate: ") + e.what(), 0);
        }
    }

    /// Accepts the JSON certificate, or the text form
    ///     <variant> <k>
    ///     <v1> <v2> ...
    ///     [witnesses <u1> <u2> ...]
    inline auto parse_certificate(std::string_view text) -> GrundySequence
    {
        auto first = text.find_first_not_of(" \t\r\n");
        if (first == std::string_view::npos)
            throw ParseError("certificate: empty input", 0);
        if (text[first] == '{') {
            json j;
            try {
                j = json::parse(text);
            }
            catch (const json::parse_error & e) {
                throw ParseError(std::string("certificate: ") + e.what(), e.byte);
            }
            return sequence_from_json(j);
        }

        std::istringstream in{ std::string(text) };
        std::string variant, line;
        GrundySequence seq;
        if (! (in >> variant >> seq.k))
            throw ParseError("certificate: expected '<variant> <k>' header", first);
        seq.variant = parse_variant(variant);
        std::getline(in, line);
        bool in_witnesses = false;
        while (std::getline(in, line)) {
            std::istringstream words(line);
            std::string word;
            while (words >> word) {
                if (word == "witnesses") {
                    in_witnesses = true;
                    continue;
                }
                try {
                    std::size_t used = 0;
                    int v = std::stoi(word, &used);
                    if (used != word.size())
                        throw std::invalid_argument(word);
                    (in_witnesses ? seq.witnesses : seq.order).push_back(v);
                }
                catch (const std::logic_error &) {
                    throw ParseError("certificate: '" + word + "' is not a vertex id", text.find(word));
                }
            }
        }
        return seq;
    }

    inline auto to_json(const ForcingTrace & trace) -> json
    {
        json waves = json::array();
        for (const auto & w : trace.waves)
            waves.push_back(json{ { "forcer", w.forcer }, { "forced", w.forced } });
        return json{ { "k", trace.k }, { "initial", trace.initial_blue }, { "waves", waves }, { "final", trace.final_blue } };
    }

    inline auto trace_from_json(const json & j) -> ForcingTrace
    {
        ForcingTrace t;
        t.k = j.at("k").get<int>();
        t.initial_blue = j.at("initial").get<std::vector<Vertex>>();
        for (const auto & w : j.at("waves"))
            t.waves.push_back({ w.at("forcer").get<Vertex>(), w.at("forced").get<std::vector<Vertex>>() });
        t.final_blue = j.at("final").get<std::vector<Vertex>>();
        return t;
    }
}
