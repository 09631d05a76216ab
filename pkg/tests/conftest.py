import hypothesis

hypothesis.settings.register_profile(
    "neariso", derandomize=True, max_examples=60, deadline=None)
hypothesis.settings.load_profile("neariso")
