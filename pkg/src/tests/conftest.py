from hypothesis import HealthCheck, settings

settings.register_profile("neutro", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.large_base_example])
settings.load_profile("neutro")
