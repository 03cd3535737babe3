#include "paprlab/filters.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "paprlab/errors.hpp"

namespace paprlab {

namespace {

void validate_edges(const FilterSpec& spec) {
    size_t want = (spec.kind == FilterKind::bandpass) ? 2 : 1;
    if (spec.edges_hz.size() != want)
        throw config_error("filter: " + std::to_string(want) + " band edge(s) required");
    double nyq = spec.sample_rate_hz / 2.0;
    for (double e : spec.edges_hz)
        if (!(e > 0.0 && e < nyq))
            throw config_error("filter: edge " + std::to_string(e) + " Hz outside (0, fs/2)");
    if (want == 2 && !(spec.edges_hz[0] < spec.edges_hz[1]))
        throw config_error("filter: bandpass edges must be ascending");
    if (spec.order < 1) throw config_error("filter: order must be >= 1");
}

// Unit-DC-gain Hamming windowed sinc, computed half-and-mirrored so
// taps[i] == taps[order-i] holds bitwise.
std::vector<double> windowed_sinc_lowpass(double cutoff_hz, int order, double fs) {
    int taps = order + 1;
    std::vector<double> h(taps);
    double wc = 2.0 * M_PI * cutoff_hz / fs;
    double d = order / 2.0;
    for (int k = 0; k <= order / 2; ++k) {
        double x = k - d;
        double ideal = (x == 0.0) ? wc / M_PI : std::sin(wc * x) / (M_PI * x);
        double win = 0.54 - 0.46 * std::cos(2.0 * M_PI * k / order);
        h[k] = ideal * win;
        h[order - k] = h[k];
    }
    double sum = 0.0;
    for (double v : h) sum += v;
    for (double& v : h) v /= sum;
    return h;
}

cplx response_of(const std::vector<double>& taps, const std::vector<Biquad>& sections,
                 double freq_hz, double fs) {
    double w = 2.0 * M_PI * freq_hz / fs;
    cplx z1 = std::polar(1.0, -w);
    cplx z2 = z1 * z1;
    if (!taps.empty()) {
        cplx acc = 0.0;
        cplx zk = 1.0;
        for (double t : taps) {
            acc += t * zk;
            zk *= z1;
        }
        return acc;
    }
    cplx acc = 1.0;
    for (const auto& s : sections)
        acc *= (s.b0 + s.b1 * z1 + s.b2 * z2) / (1.0 + s.a1 * z1 + s.a2 * z2);
    return acc;
}

void check_stability(const std::vector<Biquad>& sections) {
    for (const auto& s : sections) {
        // roots of z^2 + a1 z + a2
        cplx disc = std::sqrt(cplx(s.a1 * s.a1 - 4.0 * s.a2, 0.0));
        cplx r1 = (-s.a1 + disc) / 2.0;
        cplx r2 = (-s.a1 - disc) / 2.0;
        double m = std::max(std::abs(r1), std::abs(r2));
        if (!(m < 1.0 - 1e-9))
            throw numerical_error("cheby1 design produced pole magnitude " + std::to_string(m));
    }
}

} // namespace

DesignedFilter design_fir(const FilterSpec& spec) {
    if (spec.family != FilterFamily::fir_window)
        throw config_error("design_fir: family must be fir_window");
    validate_edges(spec);

    DesignedFilter f;
    f.spec = spec;
    switch (spec.kind) {
    case FilterKind::lowpass:
        f.fir_taps = windowed_sinc_lowpass(spec.edges_hz[0], spec.order, spec.sample_rate_hz);
        break;
    case FilterKind::highpass: {
        if (spec.order % 2 != 0)
            throw config_error("design_fir: highpass needs an odd tap count (even order)");
        f.fir_taps = windowed_sinc_lowpass(spec.edges_hz[0], spec.order, spec.sample_rate_hz);
        for (double& t : f.fir_taps) t = -t;
        f.fir_taps[spec.order / 2] += 1.0; // spectral inversion
        break;
    }
    case FilterKind::bandpass: {
        auto hi = windowed_sinc_lowpass(spec.edges_hz[1], spec.order, spec.sample_rate_hz);
        auto lo = windowed_sinc_lowpass(spec.edges_hz[0], spec.order, spec.sample_rate_hz);
        f.fir_taps.resize(hi.size());
        for (size_t i = 0; i < hi.size(); ++i) f.fir_taps[i] = hi[i] - lo[i];
        break;
    }
    }
    return f;
}

DesignedFilter design_cheby1(const FilterSpec& spec) {
    if (spec.family != FilterFamily::iir_cheby1)
        throw config_error("design_cheby1: family must be iir_cheby1");
    if (spec.kind == FilterKind::highpass)
        throw config_error("design_cheby1: highpass not supported");
    validate_edges(spec);
    if (!(spec.passband_ripple_db > 0.0))
        throw config_error("design_cheby1: ripple must be positive");

    int n = spec.order;
    double eps = std::sqrt(std::pow(10.0, spec.passband_ripple_db / 10.0) - 1.0);
    double phi = std::asinh(1.0 / eps) / n;

    std::vector<cplx> proto(n);
    for (int k = 1; k <= n; ++k) {
        double theta = (2.0 * k - 1.0) * M_PI / (2.0 * n);
        proto[k - 1] = cplx(-std::sinh(phi) * std::sin(theta), std::cosh(phi) * std::cos(theta));
    }

    // analog poles after frequency transform, edges prewarped for the bilinear step
    std::vector<cplx> analog;
    double ref_hz; // where the cascade gain is anchored
    if (spec.kind == FilterKind::lowpass) {
        double warp = std::tan(M_PI * spec.edges_hz[0] / spec.sample_rate_hz);
        for (const auto& p : proto) analog.push_back(p * warp);
        ref_hz = 0.0;
    } else {
        double w1 = std::tan(M_PI * spec.edges_hz[0] / spec.sample_rate_hz);
        double w2 = std::tan(M_PI * spec.edges_hz[1] / spec.sample_rate_hz);
        double w0 = std::sqrt(w1 * w2);
        double bw = w2 - w1;
        for (const auto& p : proto) {
            cplx pb = p * bw;
            cplx disc = std::sqrt(pb * pb - 4.0 * w0 * w0);
            analog.push_back((pb + disc) / 2.0);
            analog.push_back((pb - disc) / 2.0);
        }
        ref_hz = std::atan(w0) * spec.sample_rate_hz / M_PI;
    }

    std::vector<cplx> zpoles;
    for (const auto& s : analog) zpoles.push_back((1.0 + s) / (1.0 - s));

    // group into conjugate pairs; a leftover real pole becomes a first-order section
    DesignedFilter f;
    f.spec = spec;
    const double im_tol = 1e-9;
    std::vector<bool> used(zpoles.size(), false);
    bool second_order_num = (spec.kind == FilterKind::bandpass);
    for (size_t i = 0; i < zpoles.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        cplx p = zpoles[i];
        Biquad bq;
        if (std::abs(p.imag()) > im_tol) {
            size_t match = zpoles.size();
            double best = 1e300;
            for (size_t j = i + 1; j < zpoles.size(); ++j) {
                if (used[j]) continue;
                double d = std::abs(std::conj(p) - zpoles[j]);
                if (d < best) { best = d; match = j; }
            }
            if (match == zpoles.size())
                throw numerical_error("cheby1 design: unpaired complex pole");
            used[match] = true;
            cplx pm = (p + std::conj(zpoles[match])) / 2.0;
            bq.a1 = -2.0 * pm.real();
            bq.a2 = std::norm(pm);
            if (second_order_num) { bq.b0 = 1; bq.b1 = 0; bq.b2 = -1; }
            else                  { bq.b0 = 1; bq.b1 = 2; bq.b2 = 1; }
        } else {
            // try to merge with another real pole
            size_t match = zpoles.size();
            for (size_t j = i + 1; j < zpoles.size(); ++j)
                if (!used[j] && std::abs(zpoles[j].imag()) <= im_tol) { match = j; break; }
            if (match != zpoles.size()) {
                used[match] = true;
                bq.a1 = -(p.real() + zpoles[match].real());
                bq.a2 = p.real() * zpoles[match].real();
                if (second_order_num) { bq.b0 = 1; bq.b1 = 0; bq.b2 = -1; }
                else                  { bq.b0 = 1; bq.b1 = 2; bq.b2 = 1; }
            } else {
                bq.a1 = -p.real();
                bq.a2 = 0;
                if (second_order_num) { bq.b0 = 1; bq.b1 = -1; bq.b2 = 0; }
                else                  { bq.b0 = 1; bq.b1 = 1; bq.b2 = 0; }
            }
        }
        f.sections.push_back(bq);
    }
    check_stability(f.sections);

    double target = (n % 2 == 1) ? 1.0 : std::pow(10.0, -spec.passband_ripple_db / 20.0);
    double mag = std::abs(response_of({}, f.sections, ref_hz, spec.sample_rate_hz));
    if (!(mag > 0.0) || !std::isfinite(mag))
        throw numerical_error("cheby1 design: degenerate reference gain");
    double g = target / mag;
    f.sections[0].b0 *= g;
    f.sections[0].b1 *= g;
    f.sections[0].b2 *= g;
    return f;
}

namespace {

template <typename T>
std::vector<T> apply_impl(const std::vector<T>& x, const DesignedFilter& f) {
    std::vector<T> y(x.size(), T{});
    if (!f.fir_taps.empty()) {
        int shift = f.spec.order / 2;
        int n = static_cast<int>(x.size());
        int taps = static_cast<int>(f.fir_taps.size());
        for (int m = 0; m < n; ++m) {
            T acc{};
            for (int k = 0; k < taps; ++k) {
                int idx = m + shift - k;
                if (idx >= 0 && idx < n) acc += f.fir_taps[k] * x[idx];
            }
            y[m] = acc;
        }
        return y;
    }
    y = x;
    for (const auto& s : f.sections) {
        T s1{}, s2{};
        for (size_t m = 0; m < y.size(); ++m) {
            T in = y[m];
            T out = s.b0 * in + s1;
            s1 = s.b1 * in - s.a1 * out + s2;
            s2 = s.b2 * in - s.a2 * out;
            y[m] = out;
        }
    }
    return y;
}

} // namespace

std::vector<double> apply_filter(const std::vector<double>& x, const DesignedFilter& f) {
    return apply_impl(x, f);
}

std::vector<cplx> apply_filter(const std::vector<cplx>& x, const DesignedFilter& f) {
    return apply_impl(x, f);
}

RealBuffer apply_filter(const RealBuffer& x, const DesignedFilter& f) {
    if (x.sample_rate_hz != f.spec.sample_rate_hz)
        throw config_error("apply_filter: sample rate mismatch");
    return RealBuffer{apply_impl(x.samples, f), x.sample_rate_hz};
}

SignalBuffer apply_filter(const SignalBuffer& x, const DesignedFilter& f) {
    if (x.sample_rate_hz != f.spec.sample_rate_hz)
        throw config_error("apply_filter: sample rate mismatch");
    return SignalBuffer{apply_impl(x.samples, f), x.sample_rate_hz, x.domain_tag};
}

std::vector<cplx> frequency_response(const DesignedFilter& f, const std::vector<double>& freqs_hz) {
    std::vector<cplx> out(freqs_hz.size());
    for (size_t i = 0; i < freqs_hz.size(); ++i)
        out[i] = response_of(f.fir_taps, f.sections, freqs_hz[i], f.spec.sample_rate_hz);
    return out;
}

cplx frequency_response_at(const DesignedFilter& f, double freq_hz) {
    return response_of(f.fir_taps, f.sections, freq_hz, f.spec.sample_rate_hz);
}

std::string describe(const FilterSpec& spec) {
    std::ostringstream os;
    os << (spec.family == FilterFamily::fir_window ? "fir_window" : "iir_cheby1") << " ";
    switch (spec.kind) {
    case FilterKind::lowpass: os << "lowpass"; break;
    case FilterKind::highpass: os << "highpass"; break;
    case FilterKind::bandpass: os << "bandpass"; break;
    }
    os << " order=" << spec.order << " edges=";
    for (size_t i = 0; i < spec.edges_hz.size(); ++i)
        os << (i ? "," : "") << spec.edges_hz[i];
    if (spec.family == FilterFamily::iir_cheby1)
        os << " ripple_db=" << spec.passband_ripple_db;
    os << " fs=" << spec.sample_rate_hz;
    return os.str();
}

} // namespace paprlab
