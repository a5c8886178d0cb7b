from hypothesis import HealthCheck, settings

settings.register_profile(
    "fixed-seed",
    derandomize=True,
    deadline=None,
    print_blob=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("fixed-seed")
