#pragma once

namespace hadwit {

// Size caps keep the exact pipelines at desk scale. Overridable through the
// environment: HADWIT_MAX_N (system / orbit / witness order cap) and
// HADWIT_ORACLE_MAX_N (folded enumeration cap; the unfolded cap is 4 less).
int system_cap();
int oracle_cap_folded();
int oracle_cap_unfolded();

void check_system_cap(int n);

}  // namespace hadwit
