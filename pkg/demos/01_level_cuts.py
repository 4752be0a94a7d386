"""Walk through the (S,T) submodule predicate and its level-cut characterization.

Run: python3 demos/01_level_cuts.py
"""

from __future__ import annotations

from hvlab.fuzzy import cut_families
from hvlab.io import load_structure
from hvlab.submodules import check_st_hv_submodule, verify_cut_equivalence

st = load_structure("z2_module.json")
m = st.module
print("module carrier:", m.carrier.labels, "over ring", m.ring.carrier.labels)

for name, a in st.fuzzy.items():
    pred = check_st_hv_submodule(m, a)
    print(f"\nfuzzy set {name}: M={a.to_json()['M']} N={a.to_json()['N']}")
    print("  predicate:", pred.status.value, pred.condition or "", pred.witness or "")
    upper, lower = cut_families(a)
    for mask, th in upper.items():
        print(f"  upper cut {m.carrier.labels_of(mask)} first realized at {th}")
    for mask, th in lower.items():
        print(f"  lower cut {m.carrier.labels_of(mask)} first realized at {th}")
    eq = verify_cut_equivalence(m, a)
    print("  predicate agrees with cut condition:", eq.info["equivalent"])
