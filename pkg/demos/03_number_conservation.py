# %% [markdown]
# # Conserving the number of particles
#
# Read letters as particle counts. A distribution keeps the total charge
# of every finite configuration iff each window of 2r+1 rules satisfies a
# local identity, so the conserving distributions form a subshift of
# finite type. The charge oracle checks the same thing by brute force.

# %%
from nuca import Distribution, LocalRule, RuleSet
from nuca.conservation import charge_oracle, forbidden_nc_windows, is_distribution_nc, nc_sft

rules = RuleSet.of([
    LocalRule.linear("id", 2, [0, 1, 0]),
    LocalRule.linear("shift", 2, [0, 0, 1]),
    LocalRule.elementary(184, "traffic"),
])
bad = forbidden_nc_windows(rules)
print(f"{len(bad)} of {len(rules) ** 3} windows break the identity")

# %% Rule 184 moves cars without creating or destroying them.
traffic = Distribution.uniform(rules, "traffic")
check = charge_oracle(traffic, 4)
print(is_distribution_nc(traffic).verdict, f"(oracle: {check.checked} configurations, confirmed={check.confirmed})")

# %% Where the identity meets the shift, a particle gets copied or dropped.
seam = Distribution.from_names(rules, ["id"], [], ["shift"])
report = is_distribution_nc(seam)
print(report.as_dict())
check = charge_oracle(seam)
print("oracle counterexample:", check.violation.as_dict(), check.charge_before, "->", check.charge_after)

# %% Vertices of the SFT that lie on a bi-infinite path.
sft = nc_sft(rules)
print(sorted(tuple(rules[f].name for f in v) for v in sft.recurrent_vertices()))
