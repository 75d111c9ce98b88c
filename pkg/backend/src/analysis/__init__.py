"""Ground-truth oracle, uniqueness certificates and experiment design."""
