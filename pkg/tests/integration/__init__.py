"""Integration tests for marked-lattices."""
