"""Tests for marked-lattices."""
