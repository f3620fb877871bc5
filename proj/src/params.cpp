#include "debate/params.hpp"

#include <charconv>
#include <cmath>

#include "debate/error.hpp"
#include "debate/rational.hpp"

namespace debate {

ParamMode parse_param_mode(const std::string& text)
{
    if (text == "paper") return ParamMode::Paper;
    if (text == "scaled") return ParamMode::Scaled;
    throw Error(ErrorCode::BadParameter, "mode must be 'paper' or 'scaled', got '" + text + "'");
}

std::string to_string(ParamMode mode)
{
    return mode == ParamMode::Paper ? "paper" : "scaled";
}

ProtocolParams ProtocolParams::scaled()
{
    ProtocolParams p;
    p.mode = ParamMode::Scaled;
    p.c_d = 5;
    return p;
}

void ProtocolParams::validate() const
{
    if (c_d == 0) throw Error(ErrorCode::BadParameter, "c_d must be positive");
    if (chernoff_coeff == 0) throw Error(ErrorCode::BadParameter, "chernoff_coeff must be positive");
    if (!(verifier_conf > 0.0)) throw Error(ErrorCode::BadParameter, "verifier_conf must be positive");
    if (!(prover_conf_base >= 1.0)) throw Error(ErrorCode::BadParameter, "prover_conf_base must be at least 1");
    if ((r_override && *r_override == 0) || (R_override && *R_override == 0)) {
        throw Error(ErrorCode::BadParameter, "sample counts must be positive");
    }
    if (mode == ParamMode::Paper) {
        const ProtocolParams ref;
        if (c_d != ref.c_d || chernoff_coeff != ref.chernoff_coeff || verifier_conf != ref.verifier_conf ||
            prover_conf_base != ref.prover_conf_base || r_override || R_override) {
            throw Error(ErrorCode::BadParameter, "paper mode fixes c_d, chernoff_coeff, confidences, r and R");
        }
    }
}

ResolvedParams resolve(const ProtocolParams& params, double K, std::uint32_t T)
{
    params.validate();
    if (!(K >= 0.0) || !std::isfinite(K)) throw Error(ErrorCode::BadParameter, "Lipschitz constant must be finite and >= 0");
    if (T == 0) throw Error(ErrorCode::BadParameter, "T must be positive");

    ResolvedParams out;
    out.K = K;
    out.T = T;
    out.sampling = params.sampling;

    // K as written in decimal, so 1.1 * 150 is exactly 165
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, K, std::chars_format::fixed);
    const mpq_class exact_K = parse_rational(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
    const mpq_class scaled = exact_K * mpq_class(static_cast<unsigned long>(params.c_d));
    mpz_class d;
    mpz_cdiv_q(d.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    out.d = std::max<std::uint64_t>(1, d.get_ui());

    const double dd = static_cast<double>(out.d);
    const double coeff = static_cast<double>(params.chernoff_coeff) * dd * dd;
    out.r = params.r_override ? *params.r_override
                              : static_cast<std::uint64_t>(std::ceil(coeff * params.verifier_conf));
    out.R = params.R_override ? *params.R_override
                              : static_cast<std::uint64_t>(std::ceil(coeff * std::log(params.prover_conf_base * T)));
    out.R = std::max<std::uint64_t>(1, out.R);
    return out;
}

} // namespace debate
