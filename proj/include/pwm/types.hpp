#pragma once

#include <cstdint>
#include <Eigen/Core>

namespace pwm {

using Index = Eigen::Index;

// Binary answer label. World states, votes and answer keys all live in
// this domain; B maps to 0 and A to 1 so that indicator means are
// probabilities of A.
enum class Answer : std::int8_t { B = 0, A = 1 };

// Private signal received by a respondent. Signal a is the one that is
// strictly more probable in world A than in world B.
enum class Signal : std::int8_t { b = 0, a = 1 };

inline constexpr Answer opposite(Answer x) noexcept {
  return x == Answer::A ? Answer::B : Answer::A;
}

inline constexpr Answer answer_of(Signal t) noexcept {
  return t == Signal::a ? Answer::A : Answer::B;
}

inline constexpr double indicator_a(Answer x) noexcept {
  return x == Answer::A ? 1.0 : 0.0;
}

// Vote cells: 0 = B, 1 = A, kMissingVote = not observed.
inline constexpr std::int8_t kMissingVote = -1;

using VoteMatrix = Eigen::Matrix<std::int8_t, Eigen::Dynamic, Eigen::Dynamic>;
using VoteVector = Eigen::Matrix<std::int8_t, Eigen::Dynamic, 1>;

inline bool is_missing(double x) noexcept { return std::isnan(x); }

}  // namespace pwm
