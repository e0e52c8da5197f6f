"""Command-line surface: classify, words, tree, scan, report."""
