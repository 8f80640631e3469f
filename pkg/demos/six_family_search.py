"""Search K_5 x K_5 for families of mu-graph candidates, then print the certificate summary."""

from gridlocus import lemma_no_6clique_certificate

cert = lemma_no_6clique_certificate(n=5, alternates=4, enumeration_samples=20_000)
print("candidates:", cert["candidate_counts"])
for run in cert["runs"]:
    levels = ", ".join(f"{k}:{v}" for k, v in run["level_counts"].items())
    print(f"seed {run['seed_kind']:5s} profile {run['seed_profile']}: levels {levels}")
    print(f"  alternates agree: {run['alternates_agree']}, level-5 checks {run['posterior_level_before_target']}")
print("direct scan:", cert["direct_scan"])
print(f"families of size {cert['target_size']} found: {not cert['target_level_empty']}; ok={cert['ok']}")
