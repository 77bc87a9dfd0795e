#include "trimatch/errors.hpp"
#include "trimatch/tripartite.hpp"

#include <string>

namespace trimatch {

namespace {

void check_fits(const MatchingVector& m, std::size_t n_from, std::size_t n_to, const char* what) {
    if (m.source_count() != n_from || m.target_count() != n_to) {
        throw InvalidInput(std::string(what) + " does not fit the frame sizes");
    }
}

}  // namespace

void NoiseModel::validate() const {
    if (sigmas.empty()) throw InvalidConfiguration("noise model needs at least one sigma");
    if (!(sigma_floor > 0.0)) throw InvalidConfiguration("sigma floor must be positive");
    for (double s : sigmas) {
        if (!std::isfinite(s) || s < sigma_floor) {
            throw InvalidConfiguration("sigma " + std::to_string(s) + " below floor " + std::to_string(sigma_floor));
        }
    }
    if (!std::isfinite(lambda_event)) throw InvalidConfiguration("event penalty must be finite");
}

void NoiseModel::validate_for(std::size_t pair_count) const {
    validate();
    if (sigmas.size() != 1 && sigmas.size() != pair_count) {
        throw InvalidConfiguration("noise model has " + std::to_string(sigmas.size()) + " sigmas for " +
                                   std::to_string(pair_count) + " frame pairs");
    }
}

double event_penalty_at_gate(double gate_cost, double sigma, double dt) {
    return log_normal_2d(gate_cost, dt * sigma);
}

double first_pair_log_likelihood(const FrameSequence& seq, const MatchingVector& m, const NoiseModel& noise) {
    if (seq.frame_count() < 2) throw InvalidInput("first-pair likelihood needs two frames");
    const auto& a = seq.frame(0);
    const auto& b = seq.frame(1);
    check_fits(m, a.size(), b.size(), "first matching");
    const double s = seq.dt() * noise.sigma(0);
    double total = noise.lambda_event * static_cast<double>(m.disappear_count() + m.appear_count());
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!m.disappears(i)) total += log_normal_2d(squared_distance(a[i], b[static_cast<std::size_t>(m[i])]), s);
    }
    return total;
}

TripleScorer::TripleScorer(const FrameSequence& seq, std::size_t k, const MatchingVector& m_prev,
                           const NoiseModel& noise) {
    if (k == 0 || k + 1 >= seq.frame_count()) {
        throw InvalidInput("three-frame score needs a middle frame with both neighbours");
    }
    const auto& prev = seq.frame(k - 1);
    current_ = seq.frame(k);
    next_ = seq.frame(k + 1);
    check_fits(m_prev, prev.size(), current_.size(), "previous matching");

    const double dt = seq.dt();
    inv_dt_ = 1.0 / dt;
    const double sigma = noise.sigma(k);
    const double log_2pi = std::log(2.0 * std::numbers::pi);
    velocity_const_ = -log_2pi - 2.0 * std::log(sigma);
    velocity_scale_ = 1.0 / (2.0 * sigma * sigma);
    // Position form N(0, dt^2 sigma^2 I) written on the displacement / dt.
    position_const_ = -log_2pi - 2.0 * std::log(dt * sigma);
    position_scale_ = 1.0 / (2.0 * sigma * sigma);
    lambda_ = noise.lambda_event;

    incoming_.assign(current_.size(), {});
    has_incoming_.assign(current_.size(), 0);
    const auto pred = m_prev.predecessors();
    for (std::size_t i = 0; i < current_.size(); ++i) {
        if (pred[i] == MatchingVector::kDisappear) continue;
        incoming_[i] = Velocity::between(prev[static_cast<std::size_t>(pred[i])], current_[i], dt);
        has_incoming_[i] = 1;
    }
}

double TripleScorer::score(const MatchingVector& m_next) const noexcept {
    double total = events(m_next);
    for (std::size_t i = 0; i < m_next.size(); ++i) total += term(i, m_next[i]);
    return total;
}

double triple_log_likelihood(const FrameSequence& seq, std::size_t k, const MatchingVector& m_prev,
                             const MatchingVector& m_next, const NoiseModel& noise) {
    TripleScorer scorer(seq, k, m_prev, noise);
    check_fits(m_next, seq.object_count(k), seq.object_count(k + 1), "next matching");
    return scorer.score(m_next);
}

double chain_log_likelihood(const FrameSequence& seq, std::span<const MatchingVector> matchings,
                            const NoiseModel& noise) {
    if (seq.frame_count() < 2 || matchings.size() != seq.pair_count()) {
        throw InvalidInput("chain score needs one matching per frame pair");
    }
    double total = first_pair_log_likelihood(seq, matchings[0], noise);
    for (std::size_t k = 1; k < matchings.size(); ++k) {
        total += triple_log_likelihood(seq, k, matchings[k - 1], matchings[k], noise);
    }
    return total;
}

}  // namespace trimatch
