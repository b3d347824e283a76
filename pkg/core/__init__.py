# Core computational package
