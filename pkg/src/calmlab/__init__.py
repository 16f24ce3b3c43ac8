"""Breathing-biofeedback relaxation training engine.

Subpackages: signal (replay/synthetic sample sources), metrics
(respiration rate, HRV-SDNN), biofeedback (breath-to-particle mapping),
personalize (guidance templates and generation-job seams), session (2x2
protocol orchestration), stats (analysis kernel), gateway (REST + frame
stream service).
"""

__version__ = "0.1.0"
