"""Independent numpy/scipy reference for the frozen values in the C++ tests.

python3 reference.py [dt]   gate metrics for the pulse presets
python3 -c "import reference; reference.dump()"   static quantities
"""
import numpy as np, sys
from scipy.linalg import eigh
TP=2*np.pi
def lower(n): return np.diag(np.sqrt(np.arange(1,n)),1)
def build(dev,L=4):
    a=lower(L); I=np.eye(L)
    A=[np.kron(np.kron(a,I),I),np.kron(np.kron(I,a),I),np.kron(np.kron(I,I),a)]
    (w1,a1),(wc,ac),(w2,a2),g1,g2=dev
    H=np.zeros((L**3,)*2)
    for (w,al),op in zip([(w1,a1),(wc,ac),(w2,a2)],A):
        H+=w*op.T@op+0.5*al*op.T@op.T@op@op
    H+=g1*(A[0].T@A[1]+A[0]@A[1].T)+g2*(A[2].T@A[1]+A[2]@A[1].T)
    N=sum(op.T@op for op in A)
    return TP*H,N,A[1]+A[1].T
def idx(n1,nc,n2,L=4): return (n1*L+nc)*L+n2
def dressed(H):
    E,V=eigh(H); ov=np.abs(V)**2  # ov[bare,eig]
    d=H.shape[0]; lab=[-1]*d; claimed=set()
    order=sorted(range(d),key=lambda k:-ov[:,k].max())
    for k in order:
        cand=sorted(range(d),key=lambda b:-ov[b,k])
        for b in cand:
            if b not in claimed: claimed.add(b); lab[k]=b; break
    byb={lab[k]:k for k in range(d)}
    return E,V,byb
def env(t,tf,A0,l1,l2):
    l3=1-l1; x=(t-tf/2)/tf
    return A0*(1-0.5*(l1*(1-np.cos(x*2*np.pi))+l2*(1-np.cos(x*4*np.pi))+l3*(1-np.cos(x*6*np.pi))))
def gate(dev,tf,det,A0,l1,l2,dt=0.05):
    H,N,D=build(dev); E,V,byb=dressed(H)
    wc00=(E[byb[idx(0,1,0)]]-E[byb[idx(0,0,0)]])/TP
    wd=wc00+det
    H0=H-TP*wd*N
    comp=[idx(0,0,0),idx(1,0,0),idx(0,0,1),idx(1,0,1)]
    P=V[:,[byb[c] for c in comp]].astype(complex)
    psi=P.copy(); n=int(round(tf/dt))
    for k in range(n):
        t=(k+0.5)*dt
        Hk=H0+TP*env(t,tf,A0,l1,l2)/2*D
        e,W=eigh(Hk); psi=W@(np.exp(-1j*e*dt)[:,None]*(W.T@psi))
    B=P.conj().T@psi
    L1=1-np.sum(np.abs(B)**2)/4
    th=-np.angle(np.diag(B)); dth=th[3]-th[2]-th[1]+th[0]
    Z=np.diag(np.exp(1j*np.array([0,th[1]-th[0],th[2]-th[0],th[1]+th[2]-2*th[0]])))
    Bc=np.exp(1j*th[0])*Z@B
    res=[]
    for s in (1,):
      Ui=np.diag([1,1,1,-1]); M=Ui.conj().T@Bc
      F=(np.trace(M@M.conj().T).real+abs(np.trace(M))**2)/20
    pops=np.abs(np.diag(B))**2
    return dict(wc00=wc00,L1=L1,dth=dth,F=F,pops=pops)
T1=((6.5,-.3),(5.5,-.3),(4.5,-.3),.08,.08)
T3=((5.641,-.3),(6.317,-.303),(5.507,-.381),.04,.031)
if __name__=="__main__":
  dt=float(sys.argv[1]) if len(sys.argv)>1 else 0.05
  print(gate(T1,250,-.015,.0083,.3395,.0601,dt))
  print(gate(T1,150,-.010,.0095,.0481,.3136,dt))
  print(gate(T1,150,-.0039,.01086,-.2330,.2517,dt))
  print(gate(T3,450,.0025,.010,-.0178,.2528,dt))


def zeta_khz(dev):
    H, _, _ = build(dev)
    E, V, byb = dressed(H)
    e = lambda *l: E[byb[idx(*l)]] / TP
    return (e(1, 0, 1) - e(0, 0, 1) - e(1, 0, 0) + e(0, 0, 0)) * 1e6


def zeta_pert_khz(dev):
    (w1, a1), (wc, ac), (w2, a2), g1, g2 = dev
    d1, d2, d12 = w1 - wc, w2 - wc, w1 - w2
    s = 1 / (d1**2 * (d12 - a2)) - 1 / (d2**2 * (d12 + a1)) + (1 / d1 + 1 / d2) ** 2 / (d1 + d2 - ac)
    return 2 * g1**2 * g2**2 * s * 1e6


def chi(dev):
    H, _, _ = build(dev)
    E, V, byb = dressed(H)
    w = {(m, n): (E[byb[idx(m, 1, n)]] - E[byb[idx(m, 0, n)]]) / TP for m in (0, 1) for n in (0, 1)}
    return w, {k: (v - w[0, 0]) * 1e3 for k, v in w.items()}


def dump():
    np.set_printoptions(precision=12)
    for name, dev in (("T1", T1), ("T3", T3)):
        print(name, "zeta", repr(zeta_khz(dev)), "pert", repr(zeta_pert_khz(dev)))
        w, c = chi(dev)
        print(name, "omega_c", w, "chi", c)
    d20 = ((6.5, -.3), (5.5, -.3), (4.5, -.3), .02, .02)
    print("g20 zeta", zeta_khz(d20), "pert", zeta_pert_khz(d20))
    print("env", env(62.5, 250, 8.3, .3395, .0601))
