#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "rtglab/measures.hpp"
#include "rtglab/rtg.hpp"

namespace rtglab {

using Json = nlohmann::json;

inline long long checked_ll(const BigInt& v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw Error("rational component exceeds the 64-bit serialization range");
    return static_cast<long long>(v);
}

// [re_num, re_den, im_num, im_den]
inline Json crat_to_json(const CRat& c) {
    return Json::array({checked_ll(numerator(c.re)), checked_ll(denominator(c.re)),
                        checked_ll(numerator(c.im)), checked_ll(denominator(c.im))});
}

inline CRat crat_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 4) throw Error("rational must be [re_num,re_den,im_num,im_den]");
    long long rn = j[0].get<long long>(), rd = j[1].get<long long>();
    long long in = j[2].get<long long>(), id = j[3].get<long long>();
    if (rd == 0 || id == 0) throw Error("zero denominator");
    return CRat(Rat(rn, rd), Rat(in, id));
}

inline Json group_to_json(const GroupTable& g) {
    Json mul = Json::array();
    for (int x = 0; x < g.order; ++x) {
        Json row = Json::array();
        for (int y = 0; y < g.order; ++y) row.push_back(g.mul(x, y));
        mul.push_back(std::move(row));
    }
    Json j{{"order", g.order}, {"mul", std::move(mul)}};
    if (!g.name.empty()) j["name"] = g.name;
    return j;
}

inline GroupTable group_from_json(const Json& j) {
    if (!j.contains("order") || !j.contains("mul")) throw Error("group JSON needs order and mul");
    const int n = j["order"].get<int>();
    auto mul = j["mul"].get<std::vector<std::vector<int>>>();
    if (static_cast<int>(mul.size()) != n) throw Error("mul size differs from order");
    return validate_group(mul, j.value("name", std::string{}));
}

inline Json topology_to_json(const AlexandrovTopology& t) {
    Json m = Json::array();
    for (int x = 0; x < t.points; ++x) {
        Json row = Json::array();
        for (int y = 0; y < t.points; ++y) row.push_back(t.minnbhd[x].test(y));
        m.push_back(std::move(row));
    }
    return Json{{"n", t.points}, {"minnbhd", std::move(m)}};
}

inline AlexandrovTopology topology_from_json(const Json& j) {
    if (!j.contains("n") || !j.contains("minnbhd")) throw Error("topology JSON needs n and minnbhd");
    const int n = j["n"].get<int>();
    auto m = j["minnbhd"].get<std::vector<std::vector<bool>>>();
    if (static_cast<int>(m.size()) != n) throw Error("minnbhd size differs from n");
    AlexandrovTopology t{n, std::vector<PointSet>(n, PointSet(n))};
    for (int x = 0; x < n; ++x) {
        if (static_cast<int>(m[x].size()) != n) throw Error("minnbhd row size differs from n");
        for (int y = 0; y < n; ++y)
            if (m[x][y]) t.minnbhd[x].set(y);
    }
    t.validate();
    return t;
}

inline Json instance_to_json(const RtGroup& r) {
    Json cone = Json::array();
    for (int x : r.cone.elements()) cone.push_back(x);
    return Json{{"group", group_to_json(r.group)}, {"cone", std::move(cone)}};
}

struct InstanceFile {
    RtGroup rtg;
    std::optional<AlexandrovTopology> claimed_sigma;
    std::optional<std::vector<int>> claimed_n_of_g;
};

// {"group":..., "cone":[...]} or {"group":..., "topology":{...}}, with an
// optional "claimed" block used by fault-injection fixtures.
inline InstanceFile instance_from_json(const Json& j) {
    if (!j.contains("group")) throw Error("instance JSON needs a group");
    GroupTable g = group_from_json(j["group"]);
    InstanceFile out;
    if (j.contains("cone")) {
        std::uint64_t mask = 0;
        for (int x : j["cone"].get<std::vector<int>>()) {
            if (x < 0 || x >= g.order) throw Error("cone element out of range");
            mask |= 1ull << x;
        }
        out.rtg = make_rtg(g, Subgrp{mask, g.order});
    } else if (j.contains("topology")) {
        out.rtg = make_rtg_from_topology(g, topology_from_json(j["topology"]));
    } else {
        throw Error("instance JSON needs cone or topology");
    }
    if (j.contains("claimed")) {
        const Json& c = j["claimed"];
        if (c.contains("sigma")) out.claimed_sigma = topology_from_json(c["sigma"]);
        if (c.contains("n_of_g")) out.claimed_n_of_g = c["n_of_g"].get<std::vector<int>>();
    }
    return out;
}

inline Json meas_to_json(const Meas& m) {
    Json w = Json::array();
    for (const CRat& c : m.weights) w.push_back(crat_to_json(c));
    return Json{{"weights", std::move(w)}};
}

inline Meas meas_from_json(const RtGroup& r, const Json& j) {
    if (!j.contains("weights")) throw Error("measure JSON needs weights");
    std::vector<CRat> w;
    for (const Json& e : j["weights"]) w.push_back(crat_from_json(e));
    if (static_cast<int>(w.size()) != r.order()) throw Error("weight count differs from group order");
    return make_meas(r, std::move(w));
}

} // namespace rtglab
