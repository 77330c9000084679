#include "cobw/cobw.h"

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#include "cobw/errors.hpp"
#include "cobw/gring.hpp"
#include "cobw/report.hpp"
#include "cobw/wtheory.hpp"

struct cobw_ring {
    cobw::gring::PresentationPtr ring;
};

struct cobw_element {
    cobw::gring::RingElement value;
};

struct cobw_report {
    cobw::report::Report value;
};

namespace {

thread_local std::string last_error;

template <typename F>
cobw_status guarded(F&& body)
{
    try {
        body();
        last_error.clear();
        return COBW_OK;
    } catch (const cobw::VerificationError& e) {
        last_error = e.what();
        return COBW_ERR_VERIFICATION;
    } catch (const std::out_of_range& e) {
        last_error = e.what();
        return COBW_ERR_OUT_OF_RANGE;
    } catch (const std::invalid_argument& e) {
        last_error = e.what();
        return COBW_ERR_INVALID_ARGUMENT;
    } catch (const std::domain_error& e) {
        last_error = e.what();
        return COBW_ERR_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        last_error = e.what();
        return COBW_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return COBW_ERR_INTERNAL;
    }
}

char* dup(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out)
        throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename T>
void require(const T* p, const char* what)
{
    if (!p)
        throw std::invalid_argument(std::string(what) + " must not be null");
}

} // namespace

extern "C" {

const char* cobw_version(void) { return cobw::report::kVersion; }

const char* cobw_status_message(cobw_status status)
{
    switch (status) {
    case COBW_OK:
        return "ok";
    case COBW_ERR_INVALID_ARGUMENT:
        return "invalid argument";
    case COBW_ERR_VERIFICATION:
        return "verification failed";
    case COBW_ERR_OUT_OF_RANGE:
        return "out of range";
    case COBW_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

const char* cobw_last_error(void) { return last_error.c_str(); }

void cobw_string_free(char* s) { std::free(s); }

cobw_status cobw_m(uint64_t k, char** out)
{
    return guarded([&] {
        require(out, "out");
        *out = dup(cobw::numth::m(k).get_str());
    });
}

cobw_status cobw_binom_gcd(uint64_t k, char** out)
{
    return guarded([&] {
        require(out, "out");
        *out = dup(cobw::numth::binom_gcd(k).get_str());
    });
}

cobw_status cobw_r_coefficient(uint64_t k, char** out)
{
    return guarded([&] {
        require(out, "out");
        *out = dup(cobw::wtheory::r_coefficient(k).get_str());
    });
}

cobw_status cobw_epsilon(uint32_t p, uint32_t n, int64_t q, char** out)
{
    return guarded([&] {
        require(out, "out");
        *out = dup(cobw::wtheory::epsilon(p, n, cobw::numth::Integer(static_cast<long>(q))).get_str());
    });
}

cobw_status cobw_fermat_ck(uint64_t k, char** c, char** epsilon)
{
    return guarded([&] {
        require(c, "c");
        require(epsilon, "epsilon");
        const auto rec = cobw::wtheory::fermat_ck(k);
        *c = dup(rec.c.to_string());
        *epsilon = dup(rec.epsilon.to_string());
    });
}

cobw_status cobw_ring_w(int64_t q, cobw_ring** out)
{
    return guarded([&] {
        require(out, "out");
        *out = new cobw_ring{cobw::gring::Presentation::w_ring(cobw::numth::Integer(static_cast<long>(q)))};
    });
}

cobw_status cobw_ring_polynomial(const char* symbol, const uint32_t* skipped, size_t n_skipped, cobw_ring** out)
{
    return guarded([&] {
        require(out, "out");
        require(symbol, "symbol");
        if (n_skipped)
            require(skipped, "skipped");
        std::set<std::uint32_t> skip(skipped, skipped + n_skipped);
        *out = new cobw_ring{cobw::gring::Presentation::polynomial(symbol, std::move(skip))};
    });
}

void cobw_ring_free(cobw_ring* ring) { delete ring; }

cobw_status cobw_ring_graded_rank(const cobw_ring* ring, uint32_t weight, uint64_t* out)
{
    return guarded([&] {
        require(ring, "ring");
        require(out, "out");
        *out = cobw::gring::graded_rank(*ring->ring, weight);
    });
}

cobw_status cobw_element_parse(const cobw_ring* ring, const char* text, cobw_element** out)
{
    return guarded([&] {
        require(ring, "ring");
        require(text, "text");
        require(out, "out");
        *out = new cobw_element{cobw::gring::RingElement::parse(ring->ring, text)};
    });
}

void cobw_element_free(cobw_element* e) { delete e; }

cobw_status cobw_element_add(const cobw_element* a, const cobw_element* b, cobw_element** out)
{
    return guarded([&] {
        require(a, "a");
        require(b, "b");
        require(out, "out");
        *out = new cobw_element{a->value + b->value};
    });
}

cobw_status cobw_element_mul(const cobw_element* a, const cobw_element* b, cobw_element** out)
{
    return guarded([&] {
        require(a, "a");
        require(b, "b");
        require(out, "out");
        *out = new cobw_element{a->value * b->value};
    });
}

cobw_status cobw_element_to_string(const cobw_element* e, char** out)
{
    return guarded([&] {
        require(e, "element");
        require(out, "out");
        *out = dup(e->value.to_string());
    });
}

cobw_status cobw_mult_injective(const cobw_element* e, const cobw_element* const* gens, size_t n_gens, uint32_t p,
                                uint32_t max_weight, int* injective, char** witness)
{
    return guarded([&] {
        require(e, "element");
        require(injective, "injective");
        if (n_gens)
            require(gens, "gens");
        std::vector<cobw::gring::RingElement> ideal;
        for (size_t i = 0; i < n_gens; ++i) {
            require(gens[i], "generator");
            ideal.push_back(gens[i]->value);
        }
        const auto result = cobw::gring::mult_injective(e->value, ideal, p, max_weight);
        *injective = result.injective ? 1 : 0;
        if (witness) {
            const auto* f = result.first_failure();
            *witness = f ? dup(f->witness->to_string()) : nullptr;
        }
    });
}

void cobw_landweber_params_default(cobw_landweber_params* params)
{
    if (!params)
        return;
    const cobw::wtheory::LandweberOptions d;
    params->q = d.q.get_si();
    params->pmax = d.p_max;
    params->nmax = d.n_max;
    params->degmax = d.max_weight;
    params->samples = d.samples;
    params->seed = d.seed;
    params->fault = d.fault ? 1 : 0;
    params->threads = d.threads;
}

cobw_status cobw_report_mktable(uint32_t kmax, cobw_report** out)
{
    return guarded([&] {
        require(out, "out");
        *out = new cobw_report{cobw::report::mktable(kmax)};
    });
}

cobw_status cobw_report_landweber(const cobw_landweber_params* params, cobw_report** out)
{
    return guarded([&] {
        require(params, "params");
        require(out, "out");
        cobw::wtheory::LandweberOptions o;
        o.q = cobw::numth::Integer(static_cast<long>(params->q));
        o.p_max = params->pmax;
        o.n_max = params->nmax;
        o.max_weight = params->degmax;
        o.samples = params->samples;
        o.seed = params->seed;
        o.fault = params->fault != 0;
        o.threads = params->threads;
        *out = new cobw_report{cobw::report::landweber(o)};
    });
}

cobw_status cobw_report_fermat(uint64_t kmax, int64_t search_bound, cobw_report** out)
{
    return guarded([&] {
        require(out, "out");
        std::optional<cobw::numth::Integer> bound;
        if (search_bound >= 0)
            bound = cobw::numth::Integer(static_cast<long>(search_bound));
        *out = new cobw_report{cobw::report::fermat(kmax, bound)};
    });
}

cobw_status cobw_report_nseries(int64_t n, int64_t q, uint32_t order, cobw_report** out)
{
    return guarded([&] {
        require(out, "out");
        *out = new cobw_report{cobw::report::nseries(cobw::numth::Integer(static_cast<long>(n)),
                                                     cobw::numth::Integer(static_cast<long>(q)), order)};
    });
}

int cobw_report_passed(const cobw_report* report) { return report && report->value.passed ? 1 : 0; }

cobw_status cobw_report_render(const cobw_report* report, cobw_format format, int include_timing, char** out)
{
    return guarded([&] {
        require(report, "report");
        require(out, "out");
        cobw::report::Format f;
        switch (format) {
        case COBW_FORMAT_JSON:
            f = cobw::report::Format::json;
            break;
        case COBW_FORMAT_CSV:
            f = cobw::report::Format::csv;
            break;
        case COBW_FORMAT_MD:
            f = cobw::report::Format::md;
            break;
        default:
            throw std::invalid_argument("unknown format");
        }
        *out = dup(cobw::report::render(report->value, f, include_timing != 0));
    });
}

cobw_status cobw_report_payload(const cobw_report* report, char** out)
{
    return guarded([&] {
        require(report, "report");
        require(out, "out");
        *out = dup(cobw::report::payload(report->value));
    });
}

void cobw_report_free(cobw_report* report) { delete report; }

} // extern "C"
