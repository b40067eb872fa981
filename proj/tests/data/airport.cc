costchain
states s u t
initial s
target t
s t 20 9/10
s u 15 1/10
u u 5 1/5
u t 10 4/5
t t 0 1
