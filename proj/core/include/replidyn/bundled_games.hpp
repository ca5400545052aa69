#pragma once

#include <memory>

#include "replidyn/congestion_game.hpp"
#include "replidyn/normal_form_game.hpp"
#include "replidyn/potential.hpp"
#include "replidyn/task_allocation_game.hpp"

namespace replidyn {

// Built-in example games, mirrored one-to-one by the files under fixtures/.
// Derivations of their Nash sets and potentials live in fixtures/README.md.

// Two unit tasks on two identical machines, C(k) = k, M = 2. Pure Nash
// (1,2) and (2,1); the uniform profile is the mixed equilibrium.
CongestionGame make_lb2();

// Three players on two resources; players 1 and 2 pick one resource, player
// 3 may also take both. C_1 = (1,2,3), C_2 = (2,3,4), M = 8.
CongestionGame make_congestion3();

// Four tasks of weights 1, 2, 4, 8 on two machines under SPT, M = 15.
TaskAllocationGame make_taskalloc4();

// 2x3 exact-potential normal-form game: costs are a shared potential table
// plus per-player terms that depend only on the opponent, M = 2.5.
NormalFormGame make_normform23();
PotentialSpec normform23_potential();

std::unique_ptr<Game> make_bundled(const std::string& name);
PotentialSpec bundled_potential(const std::string& name);

}  // namespace replidyn
