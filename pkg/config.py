"""DCC configuration: algorithm constants and bench defaults."""

# ─── Agreement ───

EPSILON = 0.2                  # agreement parameter ε, in (0, 1)
NEIGHBORHOOD = "closed"        # "closed" uses N[u] = N(u) ∪ {u}, "open" uses N(u)

# Probe decision thresholds, as multiples of ε
AGREE_THRESHOLD = 0.4
HEAVY_THRESHOLD = 1.2

# ─── Theory-mode sample constants (multiplied by ln n / ε) ───

AGREE_SAMPLE_CONST = 300
HEAVY_SAMPLE_CONST = 1200
NOTIFY_SAMPLE_CONST = 1e10
ANCHOR_CONST = 1e7
CONNECT_SAMPLE_CONST = 1e5

# Scales the notify / anchor / connect constants; probes keep their own scale
THEORY_SCALE = 1.0
PROBE_SCALE = 1.0

# ─── Practical mode ───

PRACTICAL_SAMPLES = 2          # probe samples, notify sample size, connect samples
ANCHOR_NUMERATOR = 20.0        # anchor coin is Bernoulli(min(20 / deg, 1))
PHI_SCAN = 4                   # anchors of one Φ_u that Clean / Connect examine per visit

# ─── Streams ───

P_DELETE = 0.2                 # deletion coin before each arrival
CHECKPOINT_EVERY = 10          # events between CSV rows
QUALITY_EVERY = 100            # events between objective evaluations in density sweeps

# ─── Baselines ───

BRUTE_FORCE_MAX_NODES = 10

# ─── Bench ───

ALGORITHMS = ("da", "pivot-dyn", "singletons", "agree-static")
COMPARE_ALGORITHMS = ("agree-static", "pivot-dyn", "da", "singletons", "pivot")
DEFAULT_PLANTED = (5, 20, 1.0, 0.02)   # k blocks of s nodes, p_in, p_out

DENSITY_POINTS = 2000
DENSITY_DIM = 8
DENSITY_CENTERS = 12
DENSITY_TARGETS = (40, 120, 250)       # target average degrees
