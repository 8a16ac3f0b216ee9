"""Integration tests for MCP Simple Slackbot."""