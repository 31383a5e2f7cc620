#include "diophant/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace diophant {

json number_json(const Rat& x) {
    json j;
    j["dec"] = decimal_string(x);
    j["rat"] = rational_string(x);
    return j;
}

json interval_json(const RatInterval& x) {
    json j;
    j["lo"] = number_json(x.lo);
    j["hi"] = number_json(x.hi);
    return j;
}

json convergents_json(const CFNumber& cf, long depth) {
    json rows = json::array();
    long last = std::min(depth, cf.last_index());
    for (long k = 0; k <= last; ++k) {
        const Convergent& c = cf.cached(k);
        json row;
        row["k"] = c.k;
        row["a"] = c.a.get_str();
        row["p"] = c.p.get_str();
        row["q"] = c.q.get_str();
        rows.push_back(std::move(row));
    }
    json j;
    j["rule"] = cf.rule().to_string();
    j["terminated"] = cf.terminated();
    j["convergents"] = std::move(rows);
    return j;
}

json estimate_json(const ExponentEstimate& est) {
    json j;
    j["quantity"] = est.quantity;
    j["route"] = est.route;
    j["infinite"] = est.infinite;
    if (est.tail) j["tail"] = interval_json(*est.tail);
    if (est.target) j["target"] = number_json(*est.target);
    j["window"] = est.window_used;
    json tr = json::array();
    for (const auto& e : est.trace) {
        json row;
        row["k"] = e.k;
        row["lambda"] = interval_json(e.lambda);
        tr.push_back(std::move(row));
    }
    j["trace"] = std::move(tr);
    return j;
}

json report_json(const VerificationReport& rep) {
    json j;
    j["claim"] = rep.claim;
    j["verdict"] = rep.verdict;
    j["inconclusive"] = rep.inconclusive;
    if (rep.first_k) j["first_k"] = *rep.first_k;
    j["detail"] = rep.detail;
    json rows = json::array();
    for (const auto& r : rep.rows) {
        json row;
        row["k"] = r.k;
        row["holds"] = r.holds;
        row["lhs"] = r.lhs;
        row["rhs"] = r.rhs;
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return j;
}

json minima_json(const MinimaSequence& seq) {
    json j;
    j["kind"] = seq.kind == MinimaKind::relative ? "relative" : "hyperbolic";
    j["bound"] = number_json(seq.bound);
    j["complete"] = seq.complete;
    json pts = json::array();
    for (const auto& p : seq.points) {
        json row;
        row["k"] = p.k;
        row["x"] = p.x.get_str();
        row["y"] = p.y.get_str();
        row["z1"] = interval_json(p.z1);
        row["z2"] = interval_json(p.z2);
        row["sup"] = interval_json(p.sup);
        row["pi2"] = interval_json(p.pi2);
        if (p.provisional) row["provisional"] = true;
        pts.push_back(std::move(row));
    }
    j["points"] = std::move(pts);
    json ties = json::array();
    for (const auto& t : seq.ties) {
        json row;
        row["a"] = {t.a.first.get_str(), t.a.second.get_str()};
        row["b"] = {t.b.first.get_str(), t.b.second.get_str()};
        ties.push_back(std::move(row));
    }
    j["ties"] = std::move(ties);
    return j;
}

json profile_json(const std::vector<ProfilePoint>& profile) {
    json rows = json::array();
    for (const auto& p : profile) {
        json row;
        row["t"] = number_json(p.t);
        row["empty"] = p.empty;
        if (!p.empty) row["f2"] = interval_json(p.f2);
        rows.push_back(std::move(row));
    }
    json j;
    j["profile"] = std::move(rows);
    return j;
}

namespace {

std::string csv_escape(const std::string& s) { return s; }  // fields carry no commas

}  // namespace

std::string convergents_csv(const CFNumber& cf, long depth) {
    std::ostringstream os;
    os << "k,a,p,q\n";
    long last = std::min(depth, cf.last_index());
    for (long k = 0; k <= last; ++k) {
        const Convergent& c = cf.cached(k);
        os << c.k << "," << c.a.get_str() << "," << c.p.get_str() << "," << c.q.get_str() << "\n";
    }
    return os.str();
}

std::string estimate_csv(const ExponentEstimate& est) {
    std::ostringstream os;
    os << "k,lo,hi,target\n";
    std::string target = est.target ? decimal_string(*est.target) : "";
    for (const auto& e : est.trace)
        os << e.k << "," << decimal_string(e.lambda.lo) << "," << decimal_string(e.lambda.hi)
           << "," << csv_escape(target) << "\n";
    return os.str();
}

std::string minima_csv(const MinimaSequence& seq) {
    std::ostringstream os;
    os << "k,x,y,z1_lo,z1_hi,z2_lo,z2_hi,sup_lo,sup_hi,pi2_lo,pi2_hi\n";
    for (const auto& p : seq.points) {
        os << p.k << "," << p.x.get_str() << "," << p.y.get_str() << ","
           << decimal_string(p.z1.lo) << "," << decimal_string(p.z1.hi) << ","
           << decimal_string(p.z2.lo) << "," << decimal_string(p.z2.hi) << ","
           << decimal_string(p.sup.lo) << "," << decimal_string(p.sup.hi) << ","
           << decimal_string(p.pi2.lo) << "," << decimal_string(p.pi2.hi) << "\n";
    }
    return os.str();
}

std::string profile_csv(const std::vector<ProfilePoint>& profile) {
    std::ostringstream os;
    os << "t,empty,f2_lo,f2_hi\n";
    for (const auto& p : profile) {
        os << decimal_string(p.t) << "," << (p.empty ? 1 : 0) << ",";
        if (p.empty)
            os << ",";
        else
            os << decimal_string(p.f2.lo) << "," << decimal_string(p.f2.hi);
        os << "\n";
    }
    return os.str();
}

void atomic_write(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << content;
        if (!out) throw std::runtime_error("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename failed for " + path);
}

}  // namespace diophant
