from optical_hqc.main import run

run()
