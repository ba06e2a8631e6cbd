#pragma once

#include "des/localization.hpp"

namespace des::transfer_line {

// Two machines and a test unit linked by buffers B1 (capacity 3) and
// B2 (capacity 1). Events: 1/2 = M1 start/finish, 3/4 = M2 start/finish,
// 5 = TU take, 6 = accept and release, 8 = reject back to B1.
// Odd events are controllable.
Generator m1();
Generator m2();
Generator tu();
Generator b1();  // buffer spec over {2,3,8}, empty state marked
Generator b2();  // buffer spec over {4,5}, empty state marked

Generator plant();      // sync(m1, m2, tu), 8 states
Generator spec_full();  // both buffer specs lifted to the full alphabet

std::vector<AgentSpec> agents();  // M1={1,2}, M2={3,4}, TU={5,6,8}

}  // namespace des::transfer_line
