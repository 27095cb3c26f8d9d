"""Point sets and their isotropy."""
