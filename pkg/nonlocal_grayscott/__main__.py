"""Command-line entry point."""

from nonlocal_grayscott.app import main

if __name__ == "__main__":
    main()
