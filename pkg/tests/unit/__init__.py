"""Unit tests for marked-lattices."""
