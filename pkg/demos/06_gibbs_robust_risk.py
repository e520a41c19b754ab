"""Gibbs posteriors fed by a robust risk estimator instead of the empirical mean.

A Gibbs posterior rho ~ pi * exp(-gamma * risk_estimate) is only as good as
its risk estimates.  On contaminated heavy-tailed data the empirical risks
are tilted -- here toward large location guesses, because outliers at +100
make big predictions look cheap -- while median-of-means estimates ignore
the spoiled blocks.  The payoff is measured in aggregated TRUE risk.
"""

from robustpac.montecarlo import gibbs_comparison_experiment, preregistered_gibbs_config

config = preregistered_gibbs_config(trials=400)
report = gibbs_comparison_experiment(config)

print("squared-loss location ensemble, t(3) data, 4.5% of points set to 100")
print(f"(N={config.n}, K={config.k_blocks} blocks, {config.trials} trials)\n")
print(f"{'gamma':>9} {'true risk (emp-Gibbs)':>22} {'true risk (MoM-Gibbs)':>22} {'MoM wins':>9}")
for row in report.rows[::2]:
    print(f"{row['gamma']:>9.3f} {row['risk_emp']:>22.3f} {row['risk_mom']:>22.3f} {row['win_fraction']:>9.1%}")

print("\nAt gamma = 0 both posteriors are the prior, so the arms agree exactly.")
print("As gamma grows, the empirical-mean posterior chases the contamination-")
print("shifted minimiser (true risk -> 12), while the MoM posterior settles on")
print("the genuinely best hypotheses (true risk -> 3): the robust estimator")
print("is a drop-in upgrade for generalised-Bayes pipelines on dirty data.")
