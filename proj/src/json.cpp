#include "opcalc/json.hpp"

namespace opcalc {

Json to_json(const Rat& r) { return r.str(); }

Json to_json(const Poly& p) { return to_string(p); }

Json to_json(const SSeries& f) {
    Json coeffs = Json::array();
    for (const Rat& c : f.coeffs()) coeffs.push_back(c.str());
    return Json{{"coefficients", coeffs}, {"exact", f.is_exact()}, {"trunc_order", f.trunc_order()}};
}

Json to_json(const DiagonalFit& fit) {
    Json j;
    j["t"] = fit.t;
    j["verdict"] = to_string(fit.verdict);
    if (fit.verdict == DiagonalVerdict::Polynomial) j["poly"] = to_string(fit.poly, 'n');
    Json samples = Json::array();
    for (const Rat& s : fit.samples) samples.push_back(s.str());
    Json evidence{{"samples", samples}};
    if (fit.verdict != DiagonalVerdict::Zero) evidence["nonvanishing_order"] = fit.nonvanishing_order;
    std::size_t vanishing = fit.samples.size();
    if (fit.verdict != DiagonalVerdict::Zero) vanishing = fit.samples.size() - 1 - fit.nonvanishing_order;
    evidence["vanishing_differences"] = vanishing;
    j["evidence"] = evidence;
    j["window"] = Json{{"n_max", fit.n_max}, {"slack", fit.slack}};
    return j;
}

Json to_json(const DxCheckReport& report) {
    Json fits = Json::array();
    for (const auto& f : report.fits) fits.push_back(to_json(f));
    Json j;
    j["window"] = Json{{"t_min", report.window.t_min},
                       {"t_max", report.window.t_max},
                       {"n_max", report.window.n_max},
                       {"slack", report.window.slack}};
    j["fits"] = fits;
    j["accepted"] = report.accepted();
    if (auto h = report.highest_nonzero()) j["highest_nonzero"] = *h;
    else j["highest_nonzero"] = nullptr;
    return j;
}

Json to_json(const ConvergenceReport& cert) {
    Json margins = Json::array();
    for (const auto& m : cert.margins) {
        if (m) margins.push_back(*m);
        else margins.push_back(nullptr);
    }
    Json j{{"certified", cert.certified},
           {"window", cert.window},
           {"growth", cert.growth},
           {"complete", cert.complete},
           {"margins", margins}};
    if (cert.violated_at) j["violated_at"] = *cert.violated_at;
    return j;
}

Json to_json(const XDExpansion& e) {
    Json terms = Json::array();
    for (const auto& a : e.terms) terms.push_back(to_string(a));
    return Json{{"basis", e.basis_name}, {"trunc_order", e.trunc_order}, {"terms", terms}};
}

Json to_json(const DXExpansion& e) {
    Json terms = Json::array();
    for (const auto& f : e.terms) terms.push_back(to_json(f));
    Json j{{"terms", terms}, {"complete", e.complete}};
    if (e.certificate) j["certificate"] = to_json(*e.certificate);
    return j;
}

Json to_json(const PolySequence& s) {
    Json a = Json::array();
    for (const auto& p : s.polys) a.push_back(to_string(p));
    return a;
}

}  // namespace opcalc
