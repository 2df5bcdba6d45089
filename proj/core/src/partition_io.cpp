#include <nlohmann/json.hpp>

#include "toral/errors.hpp"
#include "toral/partition.hpp"

namespace toral {

namespace mp = boost::multiprecision;
using nlohmann::json;

namespace {

json big_to_json(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
        return v.convert_to<std::int64_t>();
    }
    return v.str();
}

BigInt big_from_json(const json& j) {
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return BigInt(j.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    throw MalformedPartition("expected an integer, got " + j.dump());
}

void append(json& arr, const QuadNum& v) {
    for (const Rational* r : {&v.p(), &v.q()}) {
        arr.push_back(big_to_json(mp::numerator(*r)));
        arr.push_back(big_to_json(mp::denominator(*r)));
    }
}

// Accepts flat integer arrays or arrays of 4-element groups.
std::vector<BigInt> flatten(const json& j) {
    std::vector<BigInt> out;
    if (!j.is_array()) throw MalformedPartition("expected an array, got " + j.dump());
    for (const auto& item : j) {
        if (item.is_array()) {
            for (const auto& x : item) out.push_back(big_from_json(x));
        } else {
            out.push_back(big_from_json(item));
        }
    }
    return out;
}

QuadNum quad_at(const std::vector<BigInt>& v, std::size_t k, QuadContext ctx) {
    if (v[k + 1] == 0 || v[k + 3] == 0) throw MalformedPartition("zero denominator in partition file");
    return QuadNum(Rational(v[k], v[k + 1]), Rational(v[k + 2], v[k + 3]), ctx);
}

}  // namespace

std::string partition_to_json(const MarkovPartition& P) {
    json doc;
    const auto& A = P.automorphism;
    doc["matrix"] = {A.a, A.b, A.c, A.d};
    doc["elements"] = json::array();
    for (const auto& e : P.elements) {
        json origin = json::array(), ue = json::array(), se = json::array();
        append(origin, e.origin[0]);
        append(origin, e.origin[1]);
        append(ue, e.u_extent);
        append(se, e.s_extent);
        doc["elements"].push_back({{"origin", origin}, {"u_extent", ue}, {"s_extent", se}});
    }
    return doc.dump(2);
}

MarkovPartition partition_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw MalformedPartition(std::string("partition file is not valid JSON: ") + e.what());
    }
    if (!doc.contains("matrix") || !doc.contains("elements")) {
        throw MalformedPartition("partition file needs 'matrix' and 'elements'");
    }
    const auto m = flatten(doc["matrix"]);
    if (m.size() != 4) throw MalformedPartition("'matrix' must hold four integers");
    MarkovPartition P;
    try {
        P.automorphism = ToralAutomorphism(m[0].convert_to<std::int64_t>(), m[1].convert_to<std::int64_t>(),
                                           m[2].convert_to<std::int64_t>(), m[3].convert_to<std::int64_t>());
    } catch (const std::invalid_argument& e) {
        throw MalformedPartition(std::string("'matrix': ") + e.what());
    }
    const QuadContext ctx = P.automorphism.context();
    for (const auto& el : doc["elements"]) {
        if (!el.contains("origin") || !el.contains("u_extent") || !el.contains("s_extent")) {
            throw MalformedPartition("element needs 'origin', 'u_extent' and 's_extent'");
        }
        const auto o = flatten(el["origin"]);
        const auto u = flatten(el["u_extent"]);
        const auto s = flatten(el["s_extent"]);
        if (o.size() != 8 || u.size() != 4 || s.size() != 4) {
            throw MalformedPartition("origin needs 8 integers and each extent 4");
        }
        P.elements.push_back({{quad_at(o, 0, ctx), quad_at(o, 4, ctx)}, quad_at(u, 0, ctx), quad_at(s, 0, ctx)});
    }
    return P;
}

}  // namespace toral
