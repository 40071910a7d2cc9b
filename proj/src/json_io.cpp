#include "plcap/json_io.hpp"

#include <fstream>
#include <sstream>

namespace plcap {

namespace {

template <class T>
T field(const Json& j, const char* key) {
    if (!j.contains(key)) throw JsonError(std::string("missing field /") + key);
    try {
        return j.at(key).get<T>();
    } catch (const std::exception& e) {
        throw JsonError(std::string("bad field /") + key + ": " + e.what());
    }
}

RVec vec_field(const Json& j, const char* key) {
    return field<std::vector<double>>(j, key);
}

}  // namespace

Json space_to_json(const AmbientSpace& sp) { return Json{{"n", sp.n}, {"m", sp.m}}; }

AmbientSpace space_from_json(const Json& j) {
    return AmbientSpace(field<int>(j, "n"), field<int>(j, "m"));
}

Json ball_to_json(const Ball& b) {
    return Json{{"schema_version", kSchemaVersion},
                {"space", space_to_json(b.space)},
                {"center", b.center},
                {"radius", b.radius}};
}

Ball ball_from_json(const Json& j) {
    const AmbientSpace sp = space_from_json(
        j.contains("space") ? j.at("space") : throw JsonError("missing field /space"));
    return Ball(vec_field(j, "center"), field<double>(j, "radius"), sp);
}

namespace {

Json plane_set_to_json(const PlaneSet& f) {
    if (f.kind == PlaneSet::Kind::disc)
        return Json{{"kind", "disc"}, {"center", {f.center.real(), f.center.imag()}},
                    {"radius", f.radius}};
    if (f.is_interval()) return Json{{"kind", "interval"}, {"a", f.x0}, {"b", f.x1}};
    return Json{{"kind", "rect"}, {"x0", f.x0}, {"x1", f.x1}, {"y0", f.y0}, {"y1", f.y1}};
}

PlaneSet plane_set_from_json(const Json& j) {
    const std::string kind = field<std::string>(j, "kind");
    if (kind == "disc") {
        const auto c = field<std::vector<double>>(j, "center");
        if (c.size() != 2) throw JsonError("disc center must be [re, im]");
        return PlaneSet::disc(Complex(c[0], c[1]), field<double>(j, "radius"));
    }
    if (kind == "interval")
        return PlaneSet::interval(field<double>(j, "a"), field<double>(j, "b"));
    if (kind == "rect")
        return PlaneSet::rect(field<double>(j, "x0"), field<double>(j, "x1"),
                              field<double>(j, "y0"), field<double>(j, "y1"));
    throw JsonError("unknown plane set kind '" + kind + "'");
}

}  // namespace

Json cegrell_fn_to_json(const CegrellTestFn& fn) {
    const auto s = fn.spec();
    return Json{{"kind", s.kind}, {"params", s.params}};
}

std::shared_ptr<const CegrellTestFn> cegrell_fn_from_json(const Json& j) {
    CegrellTestFn::Spec s;
    s.kind = field<std::string>(j, "kind");
    s.params = field<std::vector<double>>(j, "params");
    try {
        return cegrell_fn_from_spec(s);
    } catch (const std::exception& e) {
        throw JsonError(std::string("bad psh function spec: ") + e.what());
    }
}

Json region_to_json(const Region& r) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["space"] = space_to_json(r.space());
    switch (r.kind()) {
        case RegionKind::ball: {
            const Ball* b = r.as_ball();
            j["type"] = "ball";
            j["center"] = b->center;
            j["radius"] = b->radius;
            return j;
        }
        case RegionKind::box: {
            const BoxData* d = r.as_box();
            j["type"] = "box";
            j["lo"] = d->lo;
            j["hi"] = d->hi;
            return j;
        }
        case RegionKind::product: {
            const ProductData* d = r.as_product();
            j["type"] = "product";
            Json factors = Json::array();
            for (const auto& f : d->complex_factors) factors.push_back(plane_set_to_json(f));
            for (const auto& iv : d->real_factors)
                factors.push_back(Json{{"kind", "interval"}, {"a", iv.a}, {"b", iv.b}});
            j["factors"] = factors;
            return j;
        }
        case RegionKind::lemniscate: {
            const LemniscateData* d = r.as_lemniscate();
            j["type"] = "lemniscate";
            j["poly"] = polynomial_to_json(d->poly);
            j["threshold"] = d->threshold;
            j["bounding"] = ball_to_json(d->bounding);
            return j;
        }
        case RegionKind::sublevel: {
            const SublevelData* d = r.as_sublevel();
            const auto* cf = dynamic_cast<const CegrellTestFn*>(d->fn.get());
            if (!cf) throw JsonError("sublevel region is not serializable");
            j["type"] = "psh_sublevel";
            j["fn"] = cegrell_fn_to_json(*cf);
            j["s"] = d->s;
            j["bounding"] = ball_to_json(d->bounding);
            return j;
        }
        case RegionKind::union_of: {
            j["type"] = "union";
            Json members = Json::array();
            for (const auto& m : *r.as_union()) members.push_back(region_to_json(m));
            j["members"] = members;
            return j;
        }
        case RegionKind::intersection: {
            j["type"] = "intersection";
            Json members = Json::array();
            // reuse the union accessor shape
            throw JsonError("intersection regions are internal only");
        }
        case RegionKind::finite_set: {
            const FiniteSetData* d = r.as_finite_set();
            j["type"] = "finite_set";
            j["points"] = d->points;
            return j;
        }
    }
    throw JsonError("unknown region kind");
}

Region region_from_json(const Json& j) {
    const std::string type = field<std::string>(j, "type");
    const AmbientSpace sp = space_from_json(
        j.contains("space") ? j.at("space") : throw JsonError("missing field /space"));
    if (type == "ball")
        return Region::ball(Ball(vec_field(j, "center"), field<double>(j, "radius"), sp));
    if (type == "box") return Region::box(sp, vec_field(j, "lo"), vec_field(j, "hi"));
    if (type == "product") {
        if (!j.contains("factors")) throw JsonError("missing field /factors");
        const Json& factors = j.at("factors");
        if (!factors.is_array() || (int)factors.size() != sp.n)
            throw JsonError("/factors must list one entry per coordinate");
        std::vector<PlaneSet> cf;
        std::vector<Interval> rf;
        for (int k = 0; k < sp.m; ++k) cf.push_back(plane_set_from_json(factors[(size_t)k]));
        for (int k = sp.m; k < sp.n; ++k) {
            const Json& f = factors[(size_t)k];
            if (field<std::string>(f, "kind") != "interval")
                throw JsonError("real coordinates take interval factors");
            rf.push_back(Interval{field<double>(f, "a"), field<double>(f, "b")});
        }
        return Region::product(sp, std::move(cf), std::move(rf));
    }
    if (type == "lemniscate") {
        if (!j.contains("poly") || !j.contains("bounding"))
            throw JsonError("lemniscate needs /poly and /bounding");
        return Region::lemniscate(sp, polynomial_from_json(j.at("poly")),
                                  field<double>(j, "threshold"),
                                  ball_from_json(j.at("bounding")));
    }
    if (type == "psh_sublevel") {
        if (!j.contains("fn") || !j.contains("bounding"))
            throw JsonError("psh_sublevel needs /fn and /bounding");
        return Region::sublevel(sp, cegrell_fn_from_json(j.at("fn")),
                                field<double>(j, "s"), ball_from_json(j.at("bounding")));
    }
    if (type == "union") {
        if (!j.contains("members")) throw JsonError("missing field /members");
        std::vector<Region> members;
        for (const auto& m : j.at("members")) members.push_back(region_from_json(m));
        return Region::union_of(std::move(members));
    }
    if (type == "finite_set") {
        std::vector<RVec> pts = field<std::vector<RVec>>(j, "points");
        return Region::finite_set(sp, std::move(pts));
    }
    throw JsonError("unknown region type '" + type + "'");
}

Json polynomial_to_json(const Polynomial& p) {
    Json terms = Json::array();
    for (const auto& t : p.terms())
        terms.push_back(Json::array({t.alpha, t.c.real(), t.c.imag()}));
    return Json{{"schema_version", kSchemaVersion}, {"n", p.nvars()}, {"terms", terms}};
}

Polynomial polynomial_from_json(const Json& j) {
    Polynomial p(field<int>(j, "n"));
    if (!j.contains("terms")) throw JsonError("missing field /terms");
    for (const auto& t : j.at("terms")) {
        if (!t.is_array() || t.size() != 3)
            throw JsonError("/terms entries are [multi_index, re, im]");
        try {
            p.set_coeff(t[0].get<MultiIndex>(),
                        Complex(t[1].get<double>(), t[2].get<double>()));
        } catch (const std::exception& e) {
            throw JsonError(std::string("bad term: ") + e.what());
        }
    }
    return p;
}

Json volume_to_json(const VolumeEstimate& v) {
    return Json{{"schema_version", kSchemaVersion},
                {"value", v.value},
                {"std_error", v.std_error},
                {"relative", v.relative},
                {"relative_std_error", v.relative_std_error},
                {"n_samples", v.n_samples},
                {"seed", v.seed}};
}

namespace {

const char* direction_name(CapacityEstimate::Direction d) {
    switch (d) {
        case CapacityEstimate::Direction::exact:
            return "exact";
        case CapacityEstimate::Direction::upper_bound:
            return "upper_bound";
        case CapacityEstimate::Direction::lower_bound:
            return "lower_bound";
        case CapacityEstimate::Direction::two_sided:
            return "two_sided";
    }
    return "?";
}

}  // namespace

Json capacity_to_json(const CapacityEstimate& e) {
    Json j{{"schema_version", kSchemaVersion},
           {"value", e.value},
           {"lo", e.lo},
           {"hi", e.hi},
           {"direction", direction_name(e.direction)},
           {"provenance", e.provenance},
           {"pluripolar", e.pluripolar}};
    if (std::isfinite(e.heuristic)) j["heuristic"] = e.heuristic;
    if (!e.notes.empty()) j["notes"] = e.notes;
    return j;
}

namespace {

Json bound_to_json(const Bound& b) {
    Json j{{"value", b.value}, {"kind", b.kind_name()}};
    if (b.kind == BoundKind::stat) j["sigma"] = b.sigma;
    if (b.kind == BoundKind::calibrated) j["rel_tol"] = b.tol;
    return j;
}

}  // namespace

Json report_to_json(const InequalityReport& r) {
    return Json{{"schema_version", kSchemaVersion},
                {"check_id", r.check_id},
                {"instance", r.instance},
                {"lhs", bound_to_json(r.lhs)},
                {"rhs", bound_to_json(r.rhs)},
                {"constant", r.constant},
                {"margin", r.margin},
                {"status", status_name(r.status)},
                {"observed_pass", r.observed_pass},
                {"report_only", r.report_only},
                {"seed", r.seed},
                {"notes", r.notes}};
}

Complex parse_complex(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace((unsigned char)c)) t.push_back(c);
    if (t.empty()) throw JsonError("empty complex literal");
    // pure imaginary shorthand
    if (t == "i") return {0.0, 1.0};
    if (t == "-i") return {0.0, -1.0};
    if (t == "+i") return {0.0, 1.0};

    // split into leading real part and optional trailing imaginary part
    size_t split = t.size();
    for (size_t k = 1; k < t.size(); ++k) {
        if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') split = k;
    }
    auto parse_num = [&](std::string v) -> double {
        if (v.empty() || v == "+") return 1.0;
        if (v == "-") return -1.0;
        size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw JsonError("bad numeric literal '" + v + "'");
        return x;
    };
    try {
        if (t.back() == 'i') {
            if (split == t.size()) return {0.0, parse_num(t.substr(0, t.size() - 1))};
            return {parse_num(t.substr(0, split)),
                    parse_num(t.substr(split, t.size() - split - 1))};
        }
        return {parse_num(t), 0.0};
    } catch (const JsonError&) {
        throw;
    } catch (const std::exception&) {
        throw JsonError("cannot parse complex literal '" + s + "'");
    }
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw JsonError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const std::exception& e) {
        throw JsonError("parse error in '" + path + "': " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw JsonError("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

}  // namespace plcap
