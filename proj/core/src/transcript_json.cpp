#include "diqkd/protocol/transcript_json.hpp"

#include <stdexcept>

#include "json.hpp"

namespace diqkd::protocol {

using nlohmann::json;

std::string transcript_to_json(const SessionResult& r, int indent) {
    json j;
    j["m"] = r.m;
    j["x"] = r.x;
    j["y"] = r.y;
    j["a"] = r.a;
    j["b"] = r.b;
    j["bell_set"] = r.bell_set;
    j["check_set"] = r.check_set;
    j["eta_observed"] = r.eta_observed;
    j["aborted"] = r.aborted();
    j["abort_reason"] = r.aborted() ? json(std::string(to_string(r.abort_reason))) : json(nullptr);
    j["leakage_bits"] = r.leakage_bits;
    j["alice_key"] = bits_to_hex(r.alice_key);
    j["bob_key"] = bits_to_hex(r.bob_key);
    j["key_bits"] = r.alice_key.size();
    j["raw_key_positions"] = r.raw_key_positions;
    json messages = json::array();
    for (const auto& msg : r.messages) {
        messages.push_back({{"from", msg.from == Party::Alice ? "A" : "B"},
                            {"seq", msg.seq},
                            {"kind", std::string(to_string(msg.kind))},
                            {"bits", msg.bits},
                            {"payload", to_hex(msg.payload)}});
    }
    j["messages"] = std::move(messages);
    return j.dump(indent);
}

SessionResult transcript_from_json(std::string_view text) {
    try {
        const json j = json::parse(text);
        SessionResult r;
        r.m = j.at("m").get<std::size_t>();
        r.x = j.at("x").get<std::vector<std::uint8_t>>();
        r.y = j.at("y").get<BitVector>();
        r.a = j.at("a").get<BitVector>();
        r.b = j.at("b").get<BitVector>();
        r.bell_set = j.at("bell_set").get<std::vector<std::size_t>>();
        r.check_set = j.at("check_set").get<std::vector<std::size_t>>();
        r.eta_observed = j.at("eta_observed").get<double>();
        if (j.at("aborted").get<bool>()) {
            const auto reason = parse_abort_reason(j.at("abort_reason").get<std::string>());
            if (!reason || *reason == AbortReason::None) throw std::invalid_argument("unknown abort_reason");
            r.abort_reason = *reason;
        }
        r.leakage_bits = j.at("leakage_bits").get<std::size_t>();
        const std::size_t key_bits = j.value("key_bits", std::size_t{0});
        r.alice_key = unpack_bits(from_hex(j.at("alice_key").get<std::string>()), key_bits);
        r.bob_key = unpack_bits(from_hex(j.at("bob_key").get<std::string>()), key_bits);
        r.raw_key_positions = j.value("raw_key_positions", std::vector<std::size_t>{});
        for (const auto& jm : j.at("messages")) {
            Message msg;
            const auto from = jm.at("from").get<std::string>();
            if (from != "A" && from != "B") throw std::invalid_argument("message sender must be A or B");
            msg.from = from == "A" ? Party::Alice : Party::Bob;
            msg.seq = jm.at("seq").get<std::uint32_t>();
            msg.payload = from_hex(jm.at("payload").get<std::string>());
            if (jm.contains("kind")) {
                const auto kind = parse_message_kind(jm.at("kind").get<std::string>());
                if (!kind) throw std::invalid_argument("unknown message kind");
                msg.kind = *kind;
            }
            msg.bits = jm.value("bits", msg.payload.size() * 8);
            r.messages.push_back(std::move(msg));
        }
        return r;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("transcript JSON: ") + e.what());
    }
}

}  // namespace diqkd::protocol
