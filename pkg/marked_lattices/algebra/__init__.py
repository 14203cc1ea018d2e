"""Mathematical modules: scalar algebras, matrices over them, lattices and boundaries."""
