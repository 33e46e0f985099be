#include "kamnf/ingest.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace kamnf {

namespace {

using nlohmann::ordered_json;

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double v = 1.0;
    for (int j = 0; j < k; ++j) v = v * (n - j) / (j + 1);
    return std::round(v);
}

Complex ipow(int e) {
    // i^e for any sign of e
    switch (((e % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

void require_fields(const ordered_json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* name : allowed)
            if (key == name) ok = true;
        if (!ok) throw ParseError("unknown field \"" + key + "\" in " + where);
    }
}

double require_real(const ordered_json& obj, const char* name, const std::string& where) {
    if (!obj.contains(name))
        throw ParseError("missing field \"" + std::string(name) + "\" in " + where);
    const auto& v = obj.at(name);
    if (!v.is_number())
        throw ParseError("field \"" + std::string(name) + "\" in " + where +
                         " must be a number");
    double x = v.get<double>();
    if (!std::isfinite(x))
        throw ValidationError("field \"" + std::string(name) + "\" in " + where +
                              " is not finite");
    return x;
}

int require_int(const ordered_json& obj, const char* name, const std::string& where) {
    if (!obj.contains(name))
        throw ParseError("missing field \"" + std::string(name) + "\" in " + where);
    const auto& v = obj.at(name);
    if (!v.is_number_integer())
        throw ParseError("field \"" + std::string(name) + "\" in " + where +
                         " must be an integer");
    return v.get<int>();
}

void check_rational(double omega) {
    for (long long q = 1; q <= 1000; ++q) {
        double p = std::round(omega * static_cast<double>(q));
        if (p / static_cast<double>(q) == omega) {
            std::ostringstream msg;
            msg << "omega = " << p << "/" << q
                << " exactly; an irrational frequency is required";
            throw RationalOmegaError(msg.str());
        }
    }
}

}  // namespace

HamiltonianSpec parse_spec(const std::string& json_text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("top-level value must be an object");
    require_fields(doc, {"omega", "tau", "alpha", "terms"}, "document");

    HamiltonianSpec spec;
    spec.omega = require_real(doc, "omega", "document");
    spec.tau = require_real(doc, "tau", "document");
    if (spec.tau < 1.0) throw ValidationError("tau must be >= 1");
    if (doc.contains("alpha") && !doc.at("alpha").is_null()) {
        spec.alpha = require_real(doc, "alpha", "document");
        if (*spec.alpha <= 0.0) throw ValidationError("alpha must be positive");
    }
    check_rational(spec.omega);

    if (!doc.contains("terms") || !doc.at("terms").is_array())
        throw ParseError("field \"terms\" must be an array");

    std::map<std::pair<int, int>, bool> seen;
    for (const auto& jterm : doc.at("terms")) {
        if (!jterm.is_object()) throw ParseError("term entries must be objects");
        require_fields(jterm, {"mu", "nu", "fourier"}, "term");
        CartesianTerm term;
        term.mu = require_int(jterm, "mu", "term");
        term.nu = require_int(jterm, "nu", "term");
        std::string where = "term (" + std::to_string(term.mu) + "," +
                            std::to_string(term.nu) + ")";
        if (term.mu < 0 || term.nu < 0)
            throw ValidationError(where + ": negative exponent");
        if (term.mu + term.nu < 3)
            throw ValidationError(where + ": degree below 3; linear and quadratic parts "
                                          "are fixed by the model");
        if (seen.count({term.mu, term.nu}))
            throw ValidationError("duplicate " + where);
        seen[{term.mu, term.nu}] = true;

        if (!jterm.contains("fourier") || !jterm.at("fourier").is_array())
            throw ParseError(where + ": field \"fourier\" must be an array");
        std::map<int, Complex> modes;
        for (const auto& jmode : jterm.at("fourier")) {
            if (!jmode.is_object()) throw ParseError(where + ": fourier entries must be objects");
            require_fields(jmode, {"m", "re", "im"}, where);
            int m = require_int(jmode, "m", where);
            double re = require_real(jmode, "re", where);
            double im = require_real(jmode, "im", where);
            if (modes.count(m))
                throw ValidationError(where + ": duplicate fourier mode m = " + std::to_string(m));
            modes[m] = Complex{re, im};
        }
        for (const auto& [m, c] : modes) {
            Complex mirror{};
            auto it = modes.find(-m);
            if (it != modes.end()) mirror = it->second;
            if (std::abs(c - std::conj(mirror)) > 1e-12)
                throw ValidationError(where + ": coefficient at m = " + std::to_string(m) +
                                      " breaks the reality condition h(-m) = conj(h(m))");
        }
        for (const auto& [m, c] : modes) term.modes.push_back({m, c});
        spec.terms.push_back(std::move(term));
    }
    return spec;
}

HamiltonianSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str());
}

double validate_h2(const HamiltonianSpec& spec) {
    for (const auto& term : spec.terms)
        if (term.mu + term.nu == 2)
            throw ValidationError("explicit quadratic term (" + std::to_string(term.mu) +
                                  "," + std::to_string(term.nu) +
                                  "); the quadratic part is fixed to omega r");
    return spec.omega;
}

FourierTaylorSeries to_action_angle(const HamiltonianSpec& spec, int n_max) {
    double omega = validate_h2(spec);
    FourierTaylorSeries h;
    h.window = {0, n_max};
    h.polynomial_origin = true;
    h.real_symmetric = true;
    if (n_max >= 2) h.set_coeff(2, 0, 0, Complex{omega, 0.0});

    for (const auto& term : spec.terms) {
        int j = term.mu + term.nu;
        if (j > n_max) continue;
        // x^mu y^nu = (2r)^{j/2} cos^mu sin^nu; expand both powers into
        // exponentials.  Harmonic of the (a, b) pair: 2(a + b) - j.
        double front = std::pow(2.0, 0.5 * j - term.mu - term.nu);
        Complex ifac = ipow(-term.nu);
        for (const auto& mode : term.modes) {
            if (mode.h == Complex{0.0, 0.0}) continue;
            for (int a = 0; a <= term.mu; ++a) {
                for (int b = 0; b <= term.nu; ++b) {
                    double sign = ((term.nu - b) % 2 == 0) ? 1.0 : -1.0;
                    Complex c = mode.h * front * ifac * sign *
                                binomial(term.mu, a) * binomial(term.nu, b);
                    h.add_coeff(j, 2 * (a + b) - j, mode.m, c);
                }
            }
        }
    }
    h.validate();
    return h;
}

HamiltonianSpec spec_from_series(const FourierTaylorSeries& h, double tau,
                                 std::optional<double> alpha) {
    HamiltonianSpec spec;
    spec.tau = tau;
    spec.alpha = alpha;
    spec.omega = h.coeff(2, 0, 0).real();

    // Invert per degree block through z = x + iy:
    // r^{j/2} e^{ik theta} = 2^{-j/2} z^p conj(z)^q, p = (j+k)/2, q = (j-k)/2,
    // then expand the right side binomially into x^mu y^nu.
    std::map<std::pair<int, int>, std::map<int, Complex>> cart;
    for (const auto& [i, c] : h.coeffs) {
        if (i.n == 2 && i.k == 0 && i.m == 0) continue;  // the H2 block
        if (std::abs(i.k) > i.n || (i.n - i.k) % 2 != 0)
            throw ValidationError("series lacks polynomial parity at (n,k) = (" +
                                  std::to_string(i.n) + "," + std::to_string(i.k) + ")");
        int p = (i.n + i.k) / 2, q = (i.n - i.k) / 2;
        Complex base = c * std::pow(2.0, -0.5 * i.n);
        for (int a = 0; a <= p; ++a) {
            for (int b = 0; b <= q; ++b) {
                // x^{a+b} (iy)^{p-a} (-iy)^{q-b}, and (-i)^e = i^{-e}
                Complex w = base * binomial(p, a) * binomial(q, b) *
                            ipow(p - a) * ipow(-(q - b));
                cart[{a + b, i.n - a - b}][i.m] += w;
            }
        }
    }
    for (auto& [munu, modes] : cart) {
        CartesianTerm term;
        term.mu = munu.first;
        term.nu = munu.second;
        double block_scale = 0.0;
        for (const auto& [m, c] : modes) block_scale = std::max(block_scale, std::abs(c));
        for (const auto& [m, c] : modes) {
            if (std::abs(c) <= 1e-15 * block_scale) continue;
            term.modes.push_back({m, c});
        }
        if (!term.modes.empty()) spec.terms.push_back(std::move(term));
    }
    return spec;
}

std::string spec_to_json(const HamiltonianSpec& spec) {
    ordered_json doc;
    doc["omega"] = spec.omega;
    doc["tau"] = spec.tau;
    if (spec.alpha)
        doc["alpha"] = *spec.alpha;
    else
        doc["alpha"] = nullptr;
    doc["terms"] = ordered_json::array();
    for (const auto& term : spec.terms) {
        ordered_json jterm;
        jterm["mu"] = term.mu;
        jterm["nu"] = term.nu;
        jterm["fourier"] = ordered_json::array();
        for (const auto& mode : term.modes) {
            ordered_json jmode;
            jmode["m"] = mode.m;
            jmode["re"] = mode.h.real();
            jmode["im"] = mode.h.imag();
            jterm["fourier"].push_back(jmode);
        }
        doc["terms"].push_back(jterm);
    }
    return doc.dump(2) + "\n";
}

}  // namespace kamnf
